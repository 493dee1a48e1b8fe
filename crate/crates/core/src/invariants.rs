//! Igusa invariants j = (j1, j2, j3), the geometric automorphism group they
//! determine, and a curve over k for every j in k^3.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{matrix, FieldCtx, Fq};
use crate::models::{canonicalize, normalize, to_normal_form, CurveCtx, CurveModel, NormalModel};
use crate::polyrat::{factor, Family, Poly, RatFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JInvariant {
    pub j1: Fq,
    pub j2: Fq,
    pub j3: Fq,
}

impl JInvariant {
    pub fn new(j1: Fq, j2: Fq, j3: Fq) -> Self {
        JInvariant { j1, j2, j3 }
    }
}

impl fmt::Display for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j=({},{},{})", self.j1, self.j2, self.j3)
    }
}

/// Aut(C) over the algebraic closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeoAutClass {
    C2,
    C2xC2,
    C2xS3,
    M32,
    M160,
}

impl GeoAutClass {
    pub const ALL: [GeoAutClass; 5] =
        [GeoAutClass::C2, GeoAutClass::C2xC2, GeoAutClass::C2xS3, GeoAutClass::M32, GeoAutClass::M160];

    pub fn name(self) -> &'static str {
        match self {
            GeoAutClass::C2 => "C2",
            GeoAutClass::C2xC2 => "C2xC2",
            GeoAutClass::C2xS3 => "C2xS3",
            GeoAutClass::M32 => "M32",
            GeoAutClass::M160 => "M160",
        }
    }

    pub fn order(self) -> usize {
        match self {
            GeoAutClass::C2 => 2,
            GeoAutClass::C2xC2 => 4,
            GeoAutClass::C2xS3 => 12,
            GeoAutClass::M32 => 32,
            GeoAutClass::M160 => 160,
        }
    }
}

impl fmt::Display for GeoAutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// j of y^2 + y = ax + b/x + c/(x+1), in any field.
pub fn split_j(ctx: &FieldCtx, a: Fq, b: Fq, c: Fq) -> JInvariant {
    let (ab, bc, ca) = (ctx.mul(a, b), ctx.mul(b, c), ctx.mul(c, a));
    JInvariant::new(ctx.mul(ab, c), ctx.add(ctx.add(ab, bc), ca), ctx.add(ctx.add(a, b), c))
}

/// j of y^2 + y = ax + (bx + c)/(x^2 + x + r).
pub fn quad_j(ctx: &FieldCtx, r: Fq, a: Fq, b: Fq, c: Fq) -> JInvariant {
    let e = ctx.el(a);
    let (b, c, r) = (ctx.el(b), ctx.el(c), ctx.el(r));
    let q = r * b.sq() + b * c + c.sq();
    JInvariant::new((e * q).get(), (e * b + q).get(), (e + b).get())
}

/// j of y^2 + y = (ax^2 + bx + c)/(x^3 + tx + s).
pub fn cubic_j(ctx: &FieldCtx, t: Fq, s: Fq, a: Fq, b: Fq, c: Fq) -> JInvariant {
    let (a, b, c, t, s) = (ctx.el(a), ctx.el(b), ctx.el(c), ctx.el(t), ctx.el(s));
    let tb_sa = t * b + s * a;
    let j1 = (a.sq() * (s.sq() * a + s * t * b + t.sq() * c) + b * c * tb_sa + s * b.pow(3) + c.pow(3))
        / s.pow(3);
    let j2 = ((a.sq() * t.sq() + a * b * s + c.sq()) * (s.sq() + t.pow(3))
        + c * s * t * tb_sa
        + b.sq() * t.pow(4))
        / s.pow(4);
    let j3 = (t * a + c) / s;
    JInvariant::new(j1.get(), j2.get(), j3.get())
}

pub fn j_invariant(cc: &CurveCtx, m: &NormalModel) -> JInvariant {
    let ctx = cc.field();
    let (a, b, c) = (m.a, m.b, m.c);
    match m.family {
        Family::Split111 => split_j(ctx, a, b, c),
        Family::Quad111 => quad_j(ctx, cc.r0(), a, b, c),
        Family::Cubic111 => cubic_j(ctx, cc.s0(), cc.s0(), a, b, c),
        Family::OneThree => {
            JInvariant::new(Fq::ZERO, ctx.mul(a, ctx.pow(c, 3)), ctx.mul(b, c))
        }
        Family::Five => {
            let j3 = ctx.div(ctx.pow(c, 5), ctx.pow(a, 3)).expect("a is nonzero");
            JInvariant::new(Fq::ZERO, Fq::ZERO, j3)
        }
    }
}

/// j of any model, normalizing raw ones first.
pub fn j_of(cc: &CurveCtx, m: &CurveModel) -> Result<JInvariant> {
    Ok(j_invariant(cc, &normalize(cc, m)?))
}

pub fn geo_aut_class(ctx: &FieldCtx, j: &JInvariant) -> GeoAutClass {
    let JInvariant { j1, j2, j3 } = *j;
    if !j1.is_zero() {
        if j1 != ctx.mul(j2, j3) {
            GeoAutClass::C2
        } else if j1 != ctx.pow(j3, 3) {
            GeoAutClass::C2xC2
        } else {
            GeoAutClass::C2xS3
        }
    } else if !j2.is_zero() {
        GeoAutClass::C2
    } else if !j3.is_zero() {
        GeoAutClass::M32
    } else {
        GeoAutClass::M160
    }
}

pub fn geo_isomorphic(cc: &CurveCtx, c1: &CurveModel, c2: &CurveModel) -> Result<bool> {
    Ok(j_of(cc, c1)? == j_of(cc, c2)?)
}

fn ratfn(ctx: &FieldCtx, num: Vec<Fq>, den: Vec<Fq>) -> RatFn {
    RatFn::new(ctx, Poly::from_coeffs(num), Poly::from_coeffs(den)).expect("nonzero denominator")
}

/// Solves a θ^5 + b θ^4 + c θ^3 = s^2 ω in k(ω), where ω is a root of the
/// irreducible F = x^3 + j3 x^2 + j2 x + j1 and θ = ω + j3.
/// Returns (a, b, c, t, s) for the model (ax^2+bx+c)/(x^3+tx+s).
pub fn cubic_from_fi(ctx: &FieldCtx, j: &JInvariant) -> Result<(Fq, Fq, Fq, Fq, Fq)> {
    let JInvariant { j1, j2, j3 } = *j;
    let f = Poly::from_coeffs(vec![j1, j2, j3, Fq::ONE]);
    let t = ctx.add(j2, ctx.square(j3));
    let s = ctx.add(j1, ctx.mul(j2, j3));
    let theta = Poly::from_coeffs(vec![j3, Fq::ONE]);
    let pw = |n: usize| theta.pow(ctx, n).rem(ctx, &f);
    let cols = [pw(5)?, pw(4)?, pw(3)?];
    let rows: Vec<Vec<Fq>> = (0..3).map(|i| cols.iter().map(|p| p.coeff(i)).collect()).collect();
    let rhs = Poly::x().scale(ctx, ctx.square(s));
    let rhs: Vec<Fq> = (0..3).map(|i| rhs.coeff(i)).collect();
    let sol = matrix::solve(ctx, &rows, &rhs)
        .ok_or_else(|| Error::Internal("θ^3, θ^4, θ^5 is not a basis".into()))?;
    Ok((sol[0], sol[1], sol[2], t, s))
}

/// A curve over k with the given j-invariant, in canonical form.
pub fn curve_from_j(cc: &CurveCtx, j: &JInvariant) -> Result<NormalModel> {
    let ctx = cc.field();
    for x in [j.j1, j.j2, j.j3] {
        ctx.check(x)?;
    }
    let JInvariant { j1, j2, j3 } = *j;
    let z = Fq::ZERO;
    let model = if j1.is_zero() && j2.is_zero() {
        if j3.is_zero() {
            NormalModel::new(cc, Family::Five, Fq::ONE, z, z, z)?
        } else {
            let r = ctx.sqrt(j3);
            NormalModel::new(cc, Family::Five, r, z, r, z)?
        }
    } else if j1.is_zero() {
        NormalModel::new(cc, Family::OneThree, j2, j3, Fq::ONE, z)?
    } else {
        let f = Poly::from_coeffs(vec![j1, j2, j3, Fq::ONE]);
        let factors = factor::factor(ctx, &f)?;
        let lin: Vec<Fq> = factors
            .iter()
            .filter(|(p, _)| p.deg() == 1)
            .flat_map(|(p, e)| std::iter::repeat(p.coeff(0)).take(*e))
            .collect();
        match lin.len() {
            3 => NormalModel::new(cc, Family::Split111, lin[0], lin[1], lin[2], z)?,
            1 => {
                let q = &factors.iter().find(|(p, _)| p.deg() == 2).unwrap().0;
                let (u, v) = (q.coeff(1), q.coeff(0));
                let den = vec![ctx.div(v, ctx.square(u))?, Fq::ONE, Fq::ONE];
                let rest = ratfn(ctx, vec![u, u], den);
                let raw = rest.add(ctx, &RatFn::from_poly(Poly::monomial(lin[0], 1)));
                to_normal_form(cc, &raw)?.0
            }
            _ => {
                let (a, b, c, t, s) = cubic_closed_form(ctx, j)?;
                let raw = ratfn(ctx, vec![c, b, a], vec![s, t, z, Fq::ONE]);
                to_normal_form(cc, &raw)?.0
            }
        }
    };
    Ok(canonicalize(cc, &model))
}

/// The explicit cubic models: the t = 0 form when j2 = j3^2, otherwise
/// t = s = (j2+j3^2)^3/(j1+j2j3)^2.
fn cubic_closed_form(ctx: &FieldCtx, j: &JInvariant) -> Result<(Fq, Fq, Fq, Fq, Fq)> {
    let (j1, j2, j3) = (ctx.el(j.j1), ctx.el(j.j2), ctx.el(j.j3));
    let e = j1 + j2 * j3;
    let g = j2 + j3.sq();
    if e.is_zero() {
        // F would have the root j3
        return cubic_from_fi(ctx, j);
    }
    if g.is_zero() {
        return Ok((Fq::ZERO, e.get(), (j3 * e).get(), Fq::ZERO, e.get()));
    }
    let s = g.pow(3) / e.sq();
    let h = j1 + j3.pow(3);
    let ab = h * g.sq() / e.sq();
    let c = g.pow(3) * (j1 * g.sq() + j3 * h.sq()) / e.pow(4);
    Ok((ab.get(), ab.get(), c.get(), s.get(), s.get()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gamma_act;
    use crate::models::group;
    use crate::polyrat::ExtField;

    fn all_j(ctx: &FieldCtx) -> Vec<JInvariant> {
        let mut out = Vec::new();
        for a in ctx.elements() {
            for b in ctx.elements() {
                for c in ctx.elements() {
                    out.push(JInvariant::new(a, b, c));
                }
            }
        }
        out
    }

    #[test]
    fn classes_of_simple_invariants() {
        let ctx = FieldCtx::new(1).unwrap();
        let j = |a, b, c| JInvariant::new(Fq(a), Fq(b), Fq(c));
        assert_eq!(geo_aut_class(&ctx, &j(0, 0, 0)), GeoAutClass::M160);
        assert_eq!(geo_aut_class(&ctx, &j(0, 0, 1)), GeoAutClass::M32);
        assert_eq!(geo_aut_class(&ctx, &j(1, 1, 1)), GeoAutClass::C2xS3);
        assert_eq!(geo_aut_class(&ctx, &j(0, 1, 0)), GeoAutClass::C2);
    }

    #[test]
    fn x5_has_zero_invariant() {
        let cc = CurveCtx::from_m(3).unwrap();
        let z = Fq::ZERO;
        let m = NormalModel::new(&cc, Family::Five, Fq::ONE, z, z, z).unwrap();
        assert_eq!(j_invariant(&cc, &m), JInvariant::new(z, z, z));
    }

    #[test]
    fn quad_formula_matches_splitting_over_f_q2() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            let ctx = cc.field();
            let ext = ExtField::new(ctx, 2).unwrap();
            let big = ext.big();
            let roots = ext.roots_in_big(&cc.quad_den());
            for a in ctx.nonzero_elements() {
                for b in ctx.elements() {
                    for c in ctx.elements() {
                        if b.is_zero() && c.is_zero() {
                            continue;
                        }
                        let (be, ce) = (ext.embed(b), ext.embed(c));
                        let b1 = big.add(big.mul(be, roots[0]), ce);
                        let c1 = big.add(big.mul(be, roots[1]), ce);
                        let jb = split_j(big, ext.embed(a), b1, c1);
                        let j = quad_j(ctx, cc.r0(), a, b, c);
                        assert_eq!(jb, JInvariant::new(ext.embed(j.j1), ext.embed(j.j2), ext.embed(j.j3)));
                    }
                }
            }
        }
    }

    #[test]
    fn cubic_formula_matches_conjugates_over_f_q3() {
        for m in 1..=3 {
            let ctx = FieldCtx::new(m).unwrap();
            let ext = ExtField::new(&ctx, 3).unwrap();
            let big = ext.big();
            for s in ctx.nonzero_elements() {
                for t in ctx.elements() {
                    let f = Poly::from_coeffs(vec![s, t, Fq::ZERO, Fq::ONE]);
                    if !factor::is_irreducible(&ctx, &f) {
                        continue;
                    }
                    let theta = ext.roots_in_big(&f)[0];
                    let s2 = big.square(ext.embed(s));
                    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 2, 3), (3, 1, 1)] {
                        let (a, b, c) = (Fq(a & ctx.order() - 1), Fq(b & ctx.order() - 1), Fq(c & ctx.order() - 1));
                        if a.is_zero() && b.is_zero() && c.is_zero() {
                            continue;
                        }
                        // the minimal polynomial of (a θ^5 + b θ^4 + c θ^3)/s^2
                        let val = |x: Fq| {
                            let p = |n| big.pow(x, n);
                            let num = big.add(
                                big.add(big.mul(ext.embed(a), p(5)), big.mul(ext.embed(b), p(4))),
                                big.mul(ext.embed(c), p(3)),
                            );
                            big.div(num, s2).unwrap()
                        };
                        let r0 = val(theta);
                        let r1 = val(ext.frobenius(theta));
                        let r2 = val(ext.frobenius(ext.frobenius(theta)));
                        let e1 = big.add(big.add(r0, r1), r2);
                        let e2 = big.add(big.add(big.mul(r0, r1), big.mul(r1, r2)), big.mul(r0, r2));
                        let e3 = big.mul(big.mul(r0, r1), r2);
                        let j = cubic_j(&ctx, t, s, a, b, c);
                        assert_eq!((ext.embed(j.j1), ext.embed(j.j2), ext.embed(j.j3)), (e3, e2, e1));
                    }
                }
            }
        }
    }

    #[test]
    fn j_is_constant_on_orbits_and_ignores_d() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            let ctx = cc.field();
            for f in Family::ALL {
                let gs = group(&cc, f);
                for a in ctx.elements() {
                    for b in ctx.elements() {
                        for c in ctx.elements().step_by(if m == 3 { 3 } else { 1 }) {
                            let Ok(model) = NormalModel::new(&cc, f, a, b, c, Fq::ZERO) else {
                                continue;
                            };
                            let j = j_invariant(&cc, &model);
                            let twisted = NormalModel { d: cc.r0(), ..model };
                            assert_eq!(j_invariant(&cc, &twisted), j);
                            for g in gs.iter().step_by(if gs.len() > 12 { 5 } else { 1 }) {
                                assert_eq!(j_invariant(&cc, &gamma_act(&cc, &model, g).unwrap()), j);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_through_curve_from_j() {
        for m in 1..=2 {
            let cc = CurveCtx::from_m(m).unwrap();
            for j in all_j(cc.field()) {
                let c = curve_from_j(&cc, &j).unwrap();
                assert_eq!(j_invariant(&cc, &c), j, "{j}");
                assert_eq!(canonicalize(&cc, &c), c);
            }
        }
    }

    #[test]
    fn explicit_recipes() {
        let cc = CurveCtx::from_m(2).unwrap();
        let ctx = cc.field();
        let z = Fq::ZERO;
        let j3 = Fq(3);
        let c = curve_from_j(&cc, &JInvariant::new(z, z, j3)).unwrap();
        let r = ctx.sqrt(j3);
        let expected = NormalModel::new(&cc, Family::Five, r, z, r, z).unwrap();
        assert_eq!(c, canonicalize(&cc, &expected));
        let c = curve_from_j(&cc, &JInvariant::new(z, Fq(2), Fq(1))).unwrap();
        let expected = NormalModel::new(&cc, Family::OneThree, Fq(2), Fq(1), Fq::ONE, z).unwrap();
        assert_eq!(c, canonicalize(&cc, &expected));
    }

    #[test]
    fn fi_solution_reproduces_j() {
        for m in 1..=3 {
            let ctx = FieldCtx::new(m).unwrap();
            for j in all_j(&ctx) {
                if j.j1.is_zero() {
                    continue;
                }
                let f = Poly::from_coeffs(vec![j.j1, j.j2, j.j3, Fq::ONE]);
                if !factor::is_irreducible(&ctx, &f) {
                    continue;
                }
                let (a, b, c, t, s) = cubic_from_fi(&ctx, &j).unwrap();
                assert_eq!(cubic_j(&ctx, t, s, a, b, c), j);
                let (a, b, c, t, s) = cubic_closed_form(&ctx, &j).unwrap();
                assert_eq!(cubic_j(&ctx, t, s, a, b, c), j);
            }
        }
    }

    #[test]
    fn geometric_isomorphism() {
        let cc = CurveCtx::from_m(1).unwrap();
        let o = Fq::ONE;
        let z = Fq::ZERO;
        let split = NormalModel::new(&cc, Family::Split111, o, o, o, z).unwrap();
        let five = NormalModel::new(&cc, Family::Five, o, z, z, z).unwrap();
        assert!(!geo_isomorphic(&cc, &split.into(), &five.into()).unwrap());
        let tw = NormalModel { d: o, ..split };
        assert!(geo_isomorphic(&cc, &split.into(), &tw.into()).unwrap());
    }
}
