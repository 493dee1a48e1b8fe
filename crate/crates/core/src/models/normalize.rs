//! From an arbitrary y^2 + y = u(x) to a normal-form model, with an explicit
//! isomorphism.

use super::gamma::canonicalize;
use super::{CurveCtx, CurveModel, NormalModel};
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::polyrat::{
    as_reduce, mobius_from_triple, mobius_through, ram_profile, Family, Mobius, P1Point, Place,
    Poly, RamProfile, RatFn,
};

/// An isomorphism (x, y) -> (gamma(x), y + v(x)) from the model
/// y^2 + y = u(gamma(x)) + v + v^2 to y^2 + y = u(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub gamma: Mobius,
    pub v: RatFn,
}

impl Iso {
    /// u o gamma + v + v^2.
    pub fn apply(&self, cc: &CurveCtx, u: &RatFn) -> RatFn {
        let ctx = cc.field();
        u.pullback(ctx, &self.gamma).add_as(ctx, &self.v)
    }
}

fn rational_point(p: &Place) -> P1Point {
    match p {
        Place::Infinity => P1Point::Inf,
        Place::Finite(f) => P1Point::Fin(f.coeff(0)),
    }
}

fn embed_point(cc: &CurveCtx, d: u32, p: P1Point) -> P1Point {
    let ext = if d == 2 { cc.ext2() } else { cc.ext3() };
    match p {
        P1Point::Fin(x) => P1Point::Fin(ext.embed(x)),
        P1Point::Inf => P1Point::Inf,
    }
}

fn other_points<'a>(cc: &'a CurveCtx, avoid: &[P1Point]) -> impl Iterator<Item = P1Point> + 'a {
    let avoid = avoid.to_vec();
    std::iter::once(P1Point::Inf)
        .chain(cc.field().elements().map(P1Point::Fin))
        .filter(move |p| !avoid.contains(p))
}

/// A Mobius map over k sending the family's standard pole support to the
/// poles of u, so that u o gamma has its poles in standard position.
fn standardizing_map(cc: &CurveCtx, prof: &RamProfile) -> Result<Mobius> {
    use P1Point::{Fin, Inf};
    let ctx = cc.field();
    let std = [Inf, Fin(Fq::ZERO), Fin(Fq::ONE)];
    let of_order = |e: usize| prof.poles.iter().find(|(_, o)| *o == e).map(|(p, _)| p);
    match prof.kind {
        Family::Split111 => {
            let pts: Vec<P1Point> = prof.poles.iter().map(|(p, _)| rational_point(p)).collect();
            mobius_through(ctx, std, [pts[0], pts[1], pts[2]])
        }
        Family::Quad111 => {
            let ext = cc.ext2();
            let rat = prof.poles.iter().find(|(p, _)| p.degree() == 1).unwrap();
            let Some((Place::Finite(q), _)) = prof.poles.iter().find(|(p, _)| p.degree() == 2)
            else {
                unreachable!("the quadratic pole is finite")
            };
            let r = embed_point(cc, 2, rational_point(&rat.0));
            let etas = ext.roots_in_big(&cc.quad_den());
            let thetas = ext.roots_in_big(q);
            let src = [Inf, Fin(etas[0]), Fin(etas[1])];
            for (i, j) in [(0, 1), (1, 0)] {
                match mobius_from_triple(ext, src, [r, Fin(thetas[i]), Fin(thetas[j])]) {
                    Err(Error::NotRational) => continue,
                    res => return res,
                }
            }
            Err(Error::Internal("no rational map onto the quadratic pole".into()))
        }
        Family::Cubic111 => {
            let ext = cc.ext3();
            let Place::Finite(q) = &prof.poles[0].0 else {
                unreachable!("the cubic pole is finite")
            };
            let conj = |z: Fq| [Fin(z), Fin(ext.frobenius(z)), Fin(ext.frobenius(ext.frobenius(z)))];
            let src = conj(ext.roots_in_big(&cc.cubic_den())[0]);
            for theta in ext.roots_in_big(q) {
                match mobius_from_triple(ext, src, conj(theta)) {
                    Err(Error::NotRational) => continue,
                    res => return res,
                }
            }
            Err(Error::Internal("no rational map onto the cubic pole".into()))
        }
        Family::OneThree => {
            let p3 = rational_point(of_order(3).unwrap());
            let p1 = rational_point(of_order(1).unwrap());
            let third = other_points(cc, &[p3, p1]).next().unwrap();
            mobius_through(ctx, std, [p3, p1, third])
        }
        Family::Five => {
            let p = rational_point(of_order(5).unwrap());
            let mut rest = other_points(cc, &[p]);
            let (q1, q2) = (rest.next().unwrap(), rest.next().unwrap());
            mobius_through(ctx, std, [p, q1, q2])
        }
    }
}

/// Reads (a,b,c,d) off a function whose poles are already in standard
/// position for `family`. Returns the model and a polynomial v with
/// model.u = u + v + v^2.
pub fn extract(cc: &CurveCtx, family: Family, u: &RatFn) -> Result<(NormalModel, RatFn)> {
    let ctx = cc.field();
    let (den, max_deg) = match family {
        Family::Split111 => (Poly::from_coeffs(vec![Fq::ZERO, Fq::ONE, Fq::ONE]), 1),
        Family::Quad111 => (cc.quad_den(), 1),
        Family::Cubic111 => (cc.cubic_den(), 0),
        Family::OneThree => (Poly::x(), 3),
        Family::Five => (Poly::one(), 5),
    };
    if u.den() != &den {
        return Err(Error::Internal(format!("{u} does not have the {family} pole support")));
    }
    let (p, r) = u.num().divrem(ctx, &den)?;
    if p.deg() > max_deg {
        return Err(Error::Internal(format!("{u} has a pole of the wrong order at infinity")));
    }
    let add = |x, y| ctx.add(x, y);
    let mut v = Poly::zero();
    let (a, b, c, d0) = match family {
        Family::Split111 => (p.coeff(1), r.coeff(0), r.eval(ctx, Fq::ONE), p.coeff(0)),
        Family::Quad111 => (p.coeff(1), r.coeff(1), r.coeff(0), p.coeff(0)),
        Family::Cubic111 => (r.coeff(2), r.coeff(1), r.coeff(0), p.coeff(0)),
        Family::OneThree => {
            // e x^2 = e' x + (e' x)^2 + e' x with e' = sqrt(e)
            let e = ctx.sqrt(p.coeff(2));
            v = Poly::monomial(e, 1);
            (p.coeff(3), add(p.coeff(1), e), r.coeff(0), p.coeff(0))
        }
        Family::Five => {
            // clear x^2 into x, then x into x^4
            let l = add(p.coeff(1), ctx.sqrt(p.coeff(2)));
            v = Poly::from_coeffs(vec![Fq::ZERO, p.coeff(1), ctx.square(l)]);
            let b = add(p.coeff(4), ctx.square(ctx.square(l)));
            (p.coeff(5), b, p.coeff(3), p.coeff(0))
        }
    };
    let d = ctx.as_class(d0);
    let (t, _) = ctx.solve_artin_schreier(add(d0, d)).expect("same AS-class");
    v = v.add(&Poly::constant(t));
    let model = NormalModel::new(cc, family, a, b, c, d)
        .map_err(|e| Error::Internal(format!("extraction left the family: {e}")))?;
    Ok((model, RatFn::from_poly(v)))
}

/// Brings y^2 + y = u(x) to a member of its family, together with the
/// isomorphism realizing it: model.u = iso.apply(u).
pub fn to_normal_form(cc: &CurveCtx, u: &RatFn) -> Result<(NormalModel, Iso)> {
    let ctx = cc.field();
    let (u1, v1) = as_reduce(ctx, u);
    let prof = ram_profile(ctx, &u1)?;
    let gamma = standardizing_map(cc, &prof)?;
    let u2 = u1.pullback(ctx, &gamma);
    let (model, v2) = extract(cc, prof.kind, &u2)?;
    let iso = Iso { gamma, v: v1.pullback(ctx, &gamma).add(ctx, &v2) };
    if iso.apply(cc, u) != model.u(cc) {
        return Err(Error::Internal("normalization witness does not verify".into()));
    }
    Ok((model, iso))
}

pub fn normalize(cc: &CurveCtx, m: &CurveModel) -> Result<NormalModel> {
    match m {
        CurveModel::Normal(n) => Ok(*n),
        CurveModel::Raw(u) => Ok(to_normal_form(cc, u)?.0),
    }
}

/// k-isomorphism: same family and same canonical form.
pub fn is_isomorphic(cc: &CurveCtx, c1: &CurveModel, c2: &CurveModel) -> Result<bool> {
    let n1 = normalize(cc, c1)?;
    let n2 = normalize(cc, c2)?;
    Ok(n1.family == n2.family && canonicalize(cc, &n1) == canonicalize(cc, &n2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rf(ctx: &FieldCtx, num: &[u128], den: &[u128]) -> RatFn {
        let p = |c: &[u128]| Poly::from_coeffs(c.iter().map(|&v| Fq(v)).collect());
        RatFn::new(ctx, p(num), p(den)).unwrap()
    }

    #[test]
    fn split_normal_form_is_fixed() {
        let cc = CurveCtx::from_m(1).unwrap();
        let ctx = cc.field();
        let u = rf(ctx, &[1], &[0, 1]).add(ctx, &rf(ctx, &[1], &[1, 1])).add(ctx, &RatFn::x());
        let (m, iso) = to_normal_form(&cc, &u).unwrap();
        assert_eq!(m.family, Family::Split111);
        assert_eq!(m.params(), [Fq::ONE, Fq::ONE, Fq::ONE, Fq::ZERO]);
        assert_eq!(iso.apply(&cc, &u), m.u(&cc));
    }

    #[test]
    fn onethree_after_reduction() {
        let cc = CurveCtx::from_m(2).unwrap();
        let ctx = cc.field();
        // 1/x^2 + x^3
        let u = rf(ctx, &[1, 0, 0, 0, 0, 1], &[0, 0, 1]);
        let (m, iso) = to_normal_form(&cc, &u).unwrap();
        assert_eq!(m.family, Family::OneThree);
        assert_eq!(iso.apply(&cc, &u), m.u(&cc));
    }

    #[test]
    fn five_with_quartic_term() {
        let cc = CurveCtx::from_m(2).unwrap();
        let ctx = cc.field();
        let u = rf(ctx, &[0, 0, 0, 0, 1, 1], &[1]);
        let (m, _) = to_normal_form(&cc, &u).unwrap();
        let target = NormalModel::new(&cc, Family::Five, Fq(1), Fq(1), Fq(0), Fq(0)).unwrap();
        assert!(is_isomorphic(&cc, &m.into(), &target.into()).unwrap());
        assert_eq!(m, target);
    }

    #[test]
    fn rejects_low_genus() {
        let cc = CurveCtx::from_m(1).unwrap();
        let ctx = cc.field();
        assert!(matches!(to_normal_form(&cc, &RatFn::x()), Err(Error::NotGenusTwo(_))));
        assert!(matches!(
            to_normal_form(&cc, &rf(ctx, &[0, 0, 0, 1], &[1])),
            Err(Error::NotGenusTwo(_))
        ));
    }

    /// Random models, disguised by a random Mobius map and AS-shift, must
    /// normalize back into the same orbit.
    #[test]
    fn disguised_models_recover_their_class() {
        for m in 1..=4 {
            let cc = CurveCtx::from_m(m).unwrap();
            let ctx = cc.field();
            let q = ctx.order();
            let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
            let all = Mobius::all(ctx);
            for _ in 0..60 {
                let fam = Family::ALL[rng.gen_range(0..5)];
                let e: Vec<Fq> = (0..4).map(|_| Fq(rng.gen_range(0..q))).collect();
                let Ok(model) = NormalModel::new(&cc, fam, e[0], e[1], e[2], e[3]) else {
                    continue;
                };
                let g = all[rng.gen_range(0..all.len())];
                let v = rf(
                    ctx,
                    &[rng.gen_range(0..q), rng.gen_range(0..q)],
                    &[rng.gen_range(0..q), 1],
                );
                let u = model.u(&cc).pullback(ctx, &g).add_as(ctx, &v);
                let (back, iso) = to_normal_form(&cc, &u).unwrap();
                assert_eq!(back.family, fam);
                assert_eq!(canonicalize(&cc, &back), canonicalize(&cc, &model));
                assert_eq!(iso.apply(&cc, &u), back.u(&cc));
            }
        }
    }
}
