//! Isotropy groups Γ_{abcd}, automorphism groups Aut_k(C_{abcd}) with
//! explicit lifts, and the data Γ_{abc}, δ_{abc} of the supersingular case.

use std::collections::HashSet;

use super::gamma::{gamma_act, group, GammaElement};
use super::{CurveCtx, NormalModel};
use crate::error::{Error, Result};
use crate::field::{Fq, LinearizedPoly};
use crate::polyrat::{as_reduce, Family, Mobius, RatFn};

/// The stabilizer of the parameter tuple in Γ.
pub fn isotropy(cc: &CurveCtx, m: &NormalModel) -> Vec<GammaElement> {
    let ctx = cc.field();
    let candidates = if m.family == Family::Five {
        // lambda^5 a = a forces lambda into mu_5(k)
        cc.mu5()
            .iter()
            .flat_map(|&l| ctx.elements().map(move |n| GammaElement::Five(l, n)))
            .collect()
    } else {
        group(cc, m.family)
    };
    candidates.into_iter().filter(|g| gamma_act(cc, m, g).unwrap() == *m).collect()
}

/// An automorphism (x, y) -> (gamma(x), y + v(x)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub gamma: GammaElement,
    pub mobius: Mobius,
    pub v: RatFn,
}

impl Lift {
    /// u(gamma(x)) + u(x) = v + v^2.
    pub fn verify(&self, cc: &CurveCtx, u: &RatFn) -> bool {
        let ctx = cc.field();
        let lhs = u.pullback(ctx, &self.mobius).add(ctx, u);
        lhs == self.v.add(ctx, &self.v.square(ctx))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGroup {
    /// One of 1, C2, C3, S3, C2^r, C5, C2^r:C5.
    pub name: String,
    pub order: usize,
    pub generators: Vec<GammaElement>,
}

#[derive(Clone, Debug)]
pub struct AutKDescriptor {
    pub order: usize,
    pub reduced: ReducedGroup,
    /// Whether Aut_k -> Γ_{abcd} has a section; when it does, `lifts` is one.
    pub splits: bool,
    /// One lift per element of the reduced group, in the same order as
    /// `isotropy` returns them.
    pub lifts: Vec<Lift>,
}

fn compose(cc: &CurveCtx, f: &(GammaElement, RatFn), g: &(GammaElement, RatFn)) -> (GammaElement, RatFn) {
    let ctx = cc.field();
    let v = g.1.add(ctx, &f.1.pullback(ctx, &g.0.to_mobius(cc)));
    (f.0.compose(cc, &g.0), v)
}

impl AutKDescriptor {
    /// All 2|Γ_{abcd}| automorphisms: each lift and its composite with the
    /// hyperelliptic involution.
    pub fn automorphisms(&self, cc: &CurveCtx) -> Vec<(GammaElement, RatFn)> {
        let ctx = cc.field();
        self.lifts
            .iter()
            .flat_map(|l| [(l.gamma, l.v.clone()), (l.gamma, l.v.add_const(ctx, Fq::ONE))])
            .collect()
    }

    /// table[i][j] = index of automorphisms[i] o automorphisms[j].
    pub fn mul_table(&self, cc: &CurveCtx) -> Vec<Vec<usize>> {
        let auts = self.automorphisms(cc);
        auts.iter()
            .map(|f| {
                auts.iter()
                    .map(|g| {
                        let h = compose(cc, f, g);
                        auts.iter().position(|x| *x == h).expect("Aut_k is closed")
                    })
                    .collect()
            })
            .collect()
    }
}

fn lift_of(cc: &CurveCtx, u: &RatFn, g: &GammaElement) -> Result<RatFn> {
    let ctx = cc.field();
    let w = u.pullback(ctx, &g.to_mobius(cc)).add(ctx, u);
    let (rest, v0) = as_reduce(ctx, &w);
    let c = rest
        .as_constant()
        .ok_or_else(|| Error::Internal(format!("{g} does not stabilize the model")))?;
    let (t, _) = ctx
        .solve_artin_schreier(c)
        .ok_or_else(|| Error::Internal(format!("{g} only lifts to a twist")))?;
    let v = v0.add_const(ctx, t);
    let v1 = v.add_const(ctx, Fq::ONE);
    let key = |r: &RatFn| (r.num().clone(), r.den().clone());
    Ok(if key(&v1) < key(&v) { v1 } else { v })
}

fn generators(cc: &CurveCtx, elems: &[GammaElement]) -> Vec<GammaElement> {
    let mut gens = Vec::new();
    let mut span: HashSet<GammaElement> = HashSet::new();
    span.insert(GammaElement::identity(elems[0].family()));
    for &g in elems {
        if span.contains(&g) {
            continue;
        }
        gens.push(g);
        let mut frontier: Vec<GammaElement> = span.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &h in &gens {
                let y = x.compose(cc, &h);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// The subgroup of Aut_k generated by the given automorphisms, or `None`
/// once it exceeds `limit` elements.
fn closure(
    cc: &CurveCtx,
    gens: &[(GammaElement, RatFn)],
    limit: usize,
) -> Option<Vec<(GammaElement, RatFn)>> {
    let id = (GammaElement::identity(gens[0].0.family()), RatFn::zero());
    let mut seen: HashSet<(GammaElement, RatFn)> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(cc, &x, g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.into_iter().collect())
}

fn reduced_name(cc: &CurveCtx, family: Family, elems: &[GammaElement]) -> String {
    let n = elems.len();
    if n == 1 {
        return "1".into();
    }
    if family == Family::Five {
        let has_rotation = elems.iter().any(|g| matches!(g, GammaElement::Five(l, _) if *l != Fq::ONE));
        let r = if has_rotation { (n / 5).trailing_zeros() } else { n.trailing_zeros() };
        return match (has_rotation, r) {
            (false, 1) => "C2".into(),
            (false, r) => format!("C2^{r}"),
            (true, 0) => "C5".into(),
            (true, r) => format!("C2^{r}:C5"),
        };
    }
    let _ = cc;
    match n {
        2 => "C2".into(),
        3 => "C3".into(),
        _ => "S3".into(),
    }
}

/// Aut_k(C) as an extension of the isotropy group by the hyperelliptic
/// involution, with explicit lifts. Splitness is decided exactly by trying
/// every choice of lifts on a generating set.
pub fn autk(cc: &CurveCtx, m: &NormalModel) -> Result<AutKDescriptor> {
    let ctx = cc.field();
    let u = m.u(cc);
    let elems = isotropy(cc, m);
    let n = elems.len();
    let base: Vec<RatFn> = elems.iter().map(|g| lift_of(cc, &u, g)).collect::<Result<_>>()?;
    let gens = generators(cc, &elems);
    let gen_lifts: Vec<RatFn> =
        gens.iter().map(|g| base[elems.iter().position(|e| e == g).unwrap()].clone()).collect();

    let mut section = None;
    for mask in 0u32..(1 << gens.len()) {
        let choice: Vec<(GammaElement, RatFn)> = gens
            .iter()
            .zip(&gen_lifts)
            .enumerate()
            .map(|(i, (g, v))| {
                let v = if mask >> i & 1 == 1 { v.add_const(ctx, Fq::ONE) } else { v.clone() };
                (*g, v)
            })
            .collect();
        if choice.is_empty() {
            break;
        }
        if let Some(sub) = closure(cc, &choice, n) {
            section = Some(sub);
            break;
        }
    }
    let splits = gens.is_empty() || section.is_some();
    let vs: Vec<RatFn> = match section {
        Some(sub) => elems
            .iter()
            .map(|g| sub.iter().find(|(h, _)| h == g).unwrap().1.clone())
            .collect(),
        None => base,
    };
    let lifts = elems
        .iter()
        .zip(vs)
        .map(|(g, v)| Lift { gamma: *g, mobius: g.to_mobius(cc), v })
        .collect();
    Ok(AutKDescriptor {
        order: 2 * n,
        reduced: ReducedGroup { name: reduced_name(cc, m.family, &elems), order: n, generators: gens },
        splits,
        lifts,
    })
}

/// Γ_{abc} and δ_{abc} for the supersingular family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaData {
    /// Elements (lambda, nu) of Γ_{abc}, sorted.
    pub gamma_abc: Vec<(Fq, Fq)>,
    /// δ_{abc} of each element, as a canonical class of k/AS(k).
    pub delta: Vec<Fq>,
}

impl DeltaData {
    pub fn kernel(&self) -> Vec<(Fq, Fq)> {
        self.gamma_abc
            .iter()
            .zip(&self.delta)
            .filter(|(_, d)| d.is_zero())
            .map(|(g, _)| *g)
            .collect()
    }

    /// The image δ_{abc}(Γ_{abc}), sorted.
    pub fn image(&self) -> Vec<Fq> {
        let mut im = self.delta.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

pub fn kernel_delta(cc: &CurveCtx, a: Fq, b: Fq, c: Fq) -> Result<DeltaData> {
    let ctx = cc.field();
    if a.is_zero() {
        return Err(Error::InvalidInput("a must be nonzero".into()));
    }
    let e = LinearizedPoly::e_ac(ctx, a, c);
    let solver = e.solver(ctx);
    let kernel = solver.kernel().elements();
    let mut gamma_abc: Vec<(Fq, Fq)> = if !c.is_zero() {
        kernel.iter().map(|&n| (Fq::ONE, n)).collect()
    } else {
        let mut out = Vec::new();
        for &l in cc.mu5() {
            if let Some(n0) = solver.solve(ctx.mul(b, ctx.add(Fq::ONE, l))) {
                out.extend(kernel.iter().map(|&k| (l, ctx.add(n0, k))));
            }
        }
        out
    };
    gamma_abc.sort_unstable();
    let delta = gamma_abc
        .iter()
        .map(|&(_, n)| {
            let n3 = ctx.pow(n, 3);
            let v = ctx.add(
                ctx.add(ctx.mul(a, ctx.mul(n3, ctx.square(n))), ctx.mul(b, ctx.square(ctx.square(n)))),
                ctx.mul(c, n3),
            );
            ctx.as_class(v)
        })
        .collect();
    Ok(DeltaData { gamma_abc, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::Poly;

    fn models(cc: &CurveCtx, f: Family) -> Vec<NormalModel> {
        let ctx = cc.field();
        let mut out = Vec::new();
        for a in ctx.elements() {
            for b in ctx.elements() {
                for c in ctx.elements() {
                    for d in [Fq::ZERO, cc.r0()] {
                        if let Ok(m) = NormalModel::new(cc, f, a, b, c, d) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }

    fn in_as(cc: &CurveCtx, x: Fq) -> bool {
        cc.field().trace(x) == 0
    }

    #[test]
    fn split_isotropy_table() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            for model in models(&cc, Family::Split111) {
                let (a, b, c) = (model.a, model.b, model.c);
                let expected = if a == b && b == c {
                    if in_as(&cc, a) { 6 } else { 3 }
                } else if (a == b && in_as(&cc, c)) || (b == c && in_as(&cc, a)) || (a == c && in_as(&cc, b)) {
                    2
                } else {
                    1
                };
                assert_eq!(isotropy(&cc, &model).len(), expected, "{model:?}");
            }
        }
    }

    #[test]
    fn quad_cubic_onethree_isotropy_tables() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            let ctx = cc.field();
            for model in models(&cc, Family::Quad111) {
                let c2 = model.b.is_zero() && in_as(&cc, model.a);
                assert_eq!(isotropy(&cc, &model).len(), if c2 { 2 } else { 1 });
            }
            for model in models(&cc, Family::Cubic111) {
                let c3 = model.a == model.b
                    && model.c == ctx.mul(model.a, ctx.add(Fq::ONE, cc.s0()));
                assert_eq!(isotropy(&cc, &model).len(), if c3 { 3 } else { 1 });
            }
            for model in models(&cc, Family::OneThree) {
                assert_eq!(isotropy(&cc, &model).len(), 1);
            }
        }
    }

    #[test]
    fn five_isotropy_is_kernel_of_delta() {
        for m in 1..=4 {
            let cc = CurveCtx::from_m(m).unwrap();
            let stride = if m == 4 { 13 } else { 1 };
            for model in models(&cc, Family::Five).iter().step_by(stride) {
                let dd = kernel_delta(&cc, model.a, model.b, model.c).unwrap();
                let mut iso: Vec<(Fq, Fq)> = isotropy(&cc, model)
                    .into_iter()
                    .map(|g| match g {
                        GammaElement::Five(l, n) => (l, n),
                        _ => unreachable!(),
                    })
                    .collect();
                iso.sort_unstable();
                assert_eq!(iso, dd.kernel());
                // Γ_{abc} is the stabilizer of (a,b,c) and δ is a homomorphism
                let ctx = cc.field();
                let set: HashSet<(Fq, Fq)> = dd.gamma_abc.iter().copied().collect();
                for (i, &(l, n)) in dd.gamma_abc.iter().enumerate() {
                    for (j, &(l2, n2)) in dd.gamma_abc.iter().enumerate() {
                        let prod = (ctx.mul(l, l2), ctx.add(ctx.mul(l, n2), n));
                        assert!(set.contains(&prod));
                        let k = dd.gamma_abc.iter().position(|x| *x == prod).unwrap();
                        assert_eq!(dd.delta[k], ctx.as_class(ctx.add(dd.delta[i], dd.delta[j])));
                    }
                }
            }
        }
    }

    #[test]
    fn x5_over_f16_has_160_automorphisms() {
        let cc = CurveCtx::from_m(4).unwrap();
        let dd = kernel_delta(&cc, Fq::ONE, Fq::ZERO, Fq::ZERO).unwrap();
        assert_eq!(dd.gamma_abc.len(), 80);
        let model = NormalModel::new(&cc, Family::Five, Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ZERO).unwrap();
        let aut = autk(&cc, &model).unwrap();
        assert_eq!(aut.order, 160);
        assert_eq!(aut.reduced.name, "C2^4:C5");
        let u = model.u(&cc);
        assert!(aut.lifts.iter().all(|l| l.verify(&cc, &u)));
    }

    #[test]
    fn kernel_delta_rejects_zero_a() {
        let cc = CurveCtx::from_m(2).unwrap();
        assert!(kernel_delta(&cc, Fq::ZERO, Fq::ONE, Fq::ONE).is_err());
    }

    #[test]
    fn split_s3_case_has_twelve_automorphisms() {
        let cc = CurveCtx::from_m(2).unwrap();
        let ctx = cc.field();
        let a = ctx.elements().find(|&x| !x.is_zero() && in_as(&cc, x)).unwrap();
        let model = NormalModel::new(&cc, Family::Split111, a, a, a, Fq::ZERO).unwrap();
        let aut = autk(&cc, &model).unwrap();
        assert_eq!((aut.order, aut.reduced.name.as_str(), aut.splits), (12, "S3", true));
        // the lift over 1+x is the constant w with w + w^2 = a
        let l = aut.lifts.iter().find(|l| l.gamma == GammaElement::Split(2)).unwrap();
        let w = l.v.as_constant().unwrap();
        assert_eq!(ctx.add(w, ctx.square(w)), a);
        let table = aut.mul_table(&cc);
        assert_eq!(table.len(), 12);
        for row in &table {
            let mut r = row.clone();
            r.sort_unstable();
            assert_eq!(r, (0..12).collect::<Vec<_>>());
        }
    }

    #[test]
    fn lifts_verify_and_nonsupersingular_sequences_split() {
        for m in 1..=2 {
            let cc = CurveCtx::from_m(m).unwrap();
            for f in Family::ALL {
                for model in models(&cc, f) {
                    let aut = autk(&cc, &model).unwrap();
                    let u = model.u(&cc);
                    assert!(aut.lifts.iter().all(|l| l.verify(&cc, &u)));
                    if f != Family::Five {
                        assert!(aut.splits, "{model:?}");
                    }
                    if f == Family::OneThree {
                        assert_eq!((aut.order, aut.reduced.name.as_str()), (2, "1"));
                    }
                }
            }
        }
    }

    /// Counts automorphisms by scanning all of PGL_2(k).
    fn brute_force_aut_order(cc: &CurveCtx, u: &RatFn) -> usize {
        let ctx = cc.field();
        Mobius::all(ctx)
            .iter()
            .filter(|g| {
                let w = u.pullback(ctx, g).add(ctx, u);
                let (r, _) = as_reduce(ctx, &w);
                r.as_constant().is_some_and(|c| ctx.trace(c) == 0)
            })
            .count()
            * 2
    }

    #[test]
    fn orders_match_brute_force() {
        let cc = CurveCtx::from_m(2).unwrap();
        for f in Family::ALL {
            for model in models(&cc, f).iter().step_by(if f == Family::Five { 1 } else { 3 }) {
                let aut = autk(&cc, model).unwrap();
                assert_eq!(aut.order, brute_force_aut_order(&cc, &model.u(&cc)), "{model:?}");
            }
        }
    }

    #[test]
    fn constant_lift_over_identity() {
        let cc = CurveCtx::from_m(1).unwrap();
        let model = NormalModel::new(&cc, Family::Five, Fq::ONE, Fq::ZERO, Fq::ONE, Fq::ZERO).unwrap();
        let aut = autk(&cc, &model).unwrap();
        let id = aut.lifts.iter().find(|l| l.gamma.is_identity()).unwrap();
        assert_eq!(id.v, RatFn::from_poly(Poly::zero()));
    }
}
