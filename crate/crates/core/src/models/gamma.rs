//! The groups Γ acting on each family's parameters, and canonical forms as
//! orbit minima.

use std::fmt;

use super::{CurveCtx, NormalModel};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq, LinearizedPoly};
use crate::polyrat::{Family, Mobius};

/// An element of the stabilizer Γ of a family's standard pole support.
///
/// Split: indices into [x, 1/x, 1+x, x/(1+x), 1/(1+x), (1+x)/x].
/// Quad: [x, 1+x]. Cubic: [x, (wx+s)/(x+w+1), ((1+w)x+s)/(x+w)].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaElement {
    Split(u8),
    Quad(u8),
    Cubic(u8),
    /// x -> lambda x
    OneThree(Fq),
    /// x -> lambda x + nu
    Five(Fq, Fq),
}

fn split_mobius(i: u8) -> (u128, u128, u128, u128) {
    match i {
        0 => (1, 0, 0, 1),
        1 => (0, 1, 1, 0),
        2 => (1, 1, 0, 1),
        3 => (1, 0, 1, 1),
        4 => (0, 1, 1, 1),
        5 => (1, 1, 1, 0),
        _ => panic!("split group index out of range"),
    }
}

fn finite_order(f: Family) -> u8 {
    match f {
        Family::Split111 => 6,
        Family::Quad111 => 2,
        Family::Cubic111 => 3,
        _ => unreachable!(),
    }
}

impl GammaElement {
    pub fn family(&self) -> Family {
        match self {
            GammaElement::Split(_) => Family::Split111,
            GammaElement::Quad(_) => Family::Quad111,
            GammaElement::Cubic(_) => Family::Cubic111,
            GammaElement::OneThree(_) => Family::OneThree,
            GammaElement::Five(..) => Family::Five,
        }
    }

    pub fn identity(f: Family) -> Self {
        match f {
            Family::Split111 => GammaElement::Split(0),
            Family::Quad111 => GammaElement::Quad(0),
            Family::Cubic111 => GammaElement::Cubic(0),
            Family::OneThree => GammaElement::OneThree(Fq::ONE),
            Family::Five => GammaElement::Five(Fq::ONE, Fq::ZERO),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.family())
    }

    fn from_index(f: Family, i: u8) -> Self {
        match f {
            Family::Split111 => GammaElement::Split(i),
            Family::Quad111 => GammaElement::Quad(i),
            Family::Cubic111 => GammaElement::Cubic(i),
            _ => unreachable!(),
        }
    }

    pub fn to_mobius(&self, cc: &CurveCtx) -> Mobius {
        let ctx = cc.field();
        let (w, s) = (cc.w0(), cc.s0());
        let w1 = ctx.add(w, Fq::ONE);
        let (a, b, c, d) = match *self {
            GammaElement::Split(i) => {
                let (a, b, c, d) = split_mobius(i);
                (Fq(a), Fq(b), Fq(c), Fq(d))
            }
            GammaElement::Quad(0) => (Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ONE),
            GammaElement::Quad(_) => (Fq::ONE, Fq::ONE, Fq::ZERO, Fq::ONE),
            GammaElement::Cubic(0) => (Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ONE),
            GammaElement::Cubic(1) => (w, s, Fq::ONE, w1),
            GammaElement::Cubic(_) => (w1, s, Fq::ONE, w),
            GammaElement::OneThree(l) => (l, Fq::ZERO, Fq::ZERO, Fq::ONE),
            GammaElement::Five(l, n) => (l, n, Fq::ZERO, Fq::ONE),
        };
        Mobius::new(ctx, a, b, c, d).expect("group elements are invertible")
    }

    /// self o other, as maps of the x-line.
    pub fn compose(&self, cc: &CurveCtx, o: &GammaElement) -> GammaElement {
        let ctx = cc.field();
        assert_eq!(self.family(), o.family(), "composing elements of different groups");
        match (*self, *o) {
            (GammaElement::OneThree(l), GammaElement::OneThree(l2)) => {
                GammaElement::OneThree(ctx.mul(l, l2))
            }
            (GammaElement::Five(l, n), GammaElement::Five(l2, n2)) => {
                GammaElement::Five(ctx.mul(l, l2), ctx.add(ctx.mul(l, n2), n))
            }
            _ => {
                let f = self.family();
                let target = self.to_mobius(cc).compose(ctx, &o.to_mobius(cc));
                (0..finite_order(f))
                    .map(|i| GammaElement::from_index(f, i))
                    .find(|g| g.to_mobius(cc) == target)
                    .expect("Γ is closed under composition")
            }
        }
    }

    pub fn inverse(&self, cc: &CurveCtx) -> GammaElement {
        let ctx = cc.field();
        match *self {
            GammaElement::OneThree(l) => GammaElement::OneThree(ctx.inv(l).unwrap()),
            GammaElement::Five(l, n) => {
                let li = ctx.inv(l).unwrap();
                GammaElement::Five(li, ctx.mul(li, n))
            }
            _ => {
                let f = self.family();
                (0..finite_order(f))
                    .map(|i| GammaElement::from_index(f, i))
                    .find(|g| g.compose(cc, self).is_identity())
                    .unwrap()
            }
        }
    }

    /// The order of the element in Γ.
    pub fn order(&self, cc: &CurveCtx) -> usize {
        let mut g = *self;
        let mut n = 1;
        while !g.is_identity() {
            g = g.compose(cc, self);
            n += 1;
        }
        n
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SPLIT: [&str; 6] = ["x", "1/x", "1+x", "x/(1+x)", "1/(1+x)", "(1+x)/x"];
        match self {
            GammaElement::Split(i) => f.write_str(SPLIT[*i as usize]),
            GammaElement::Quad(0) => f.write_str("x"),
            GammaElement::Quad(_) => f.write_str("1+x"),
            GammaElement::Cubic(0) => f.write_str("x"),
            GammaElement::Cubic(1) => f.write_str("(wx+s)/(x+w+1)"),
            GammaElement::Cubic(_) => f.write_str("((1+w)x+s)/(x+w)"),
            GammaElement::OneThree(l) => write!(f, "{l}x"),
            GammaElement::Five(l, n) => write!(f, "{l}x+{n}"),
        }
    }
}

/// Every element of the family's group Γ.
pub fn group(cc: &CurveCtx, f: Family) -> Vec<GammaElement> {
    let ctx = cc.field();
    match f {
        Family::OneThree => ctx.nonzero_elements().map(GammaElement::OneThree).collect(),
        Family::Five => ctx
            .nonzero_elements()
            .flat_map(|l| ctx.elements().map(move |n| GammaElement::Five(l, n)))
            .collect(),
        _ => (0..finite_order(f)).map(|i| GammaElement::from_index(f, i)).collect(),
    }
}

pub(crate) fn e_ac(ctx: &FieldCtx, a: Fq, c: Fq, x: Fq) -> Fq {
    LinearizedPoly::e_ac(ctx, a, c).eval(ctx, x)
}

/// The transformed tuple before reducing d into its AS-class.
fn act_raw(cc: &CurveCtx, p: [Fq; 4], g: &GammaElement) -> [Fq; 4] {
    let ctx = cc.field();
    let [a, b, c, d] = p;
    let add = |x, y| ctx.add(x, y);
    let mul = |x, y| ctx.mul(x, y);
    match *g {
        GammaElement::Split(i) => match i {
            0 => [a, b, c, d],
            1 => [b, a, c, add(d, c)],
            2 => [a, c, b, add(d, a)],
            3 => [c, b, a, add(add(d, c), add(b, a))],
            4 => [b, c, a, add(d, add(c, b))],
            _ => [c, a, b, add(d, add(b, a))],
        },
        GammaElement::Quad(0) => p,
        GammaElement::Quad(_) => [a, b, add(b, c), add(d, a)],
        GammaElement::Cubic(0) => p,
        GammaElement::Cubic(i) => {
            let w = if i == 1 { cc.w0() } else { add(cc.w0(), Fq::ONE) };
            let w2 = ctx.square(w);
            let w3 = mul(w2, w);
            let w4 = ctx.square(w2);
            let w5 = mul(w4, w);
            let one = Fq::ONE;
            let lin = |x: Fq, y: Fq, z: Fq| add(add(mul(a, x), mul(b, y)), mul(c, z));
            [
                lin(add(w2, w3), add(add(one, w), w2), add(one, w)),
                lin(add(one, w3), w2, w),
                lin(add(add(one, w), w5), add(add(one, w2), w4), w3),
                add(lin(w2, w, one), d),
            ]
        }
        GammaElement::OneThree(l) => {
            [mul(ctx.pow(l, 3), a), mul(l, b), mul(ctx.inv(l).unwrap(), c), d]
        }
        GammaElement::Five(l, n) => {
            let l2 = ctx.square(l);
            let l4 = ctx.square(l2);
            let n2 = ctx.square(n);
            let n3 = mul(n2, n);
            let n4 = ctx.square(n2);
            let n5 = mul(n4, n);
            [
                mul(mul(l4, l), a),
                mul(l4, add(b, e_ac(ctx, a, c, n))),
                mul(mul(l2, l), c),
                add(add(add(mul(a, n5), mul(b, n4)), mul(c, n3)), d),
            ]
        }
    }
}

fn act(cc: &CurveCtx, m: &NormalModel, g: &GammaElement) -> NormalModel {
    let [a, b, c, d] = act_raw(cc, m.params(), g);
    NormalModel { family: m.family, a, b, c, d: cc.field().as_class(d) }
}

/// The right action (a,b,c,d) -> (a,b,c,d)^γ, i.e. u -> u o γ.
pub fn gamma_act(cc: &CurveCtx, m: &NormalModel, g: &GammaElement) -> Result<NormalModel> {
    if g.family() != m.family {
        return Err(Error::InvalidInput(format!(
            "{} does not act on the {} family",
            g,
            m.family
        )));
    }
    Ok(act(cc, m, g))
}

/// The Γ-orbit of a model, sorted and without repetitions.
pub fn orbit(cc: &CurveCtx, m: &NormalModel) -> Vec<NormalModel> {
    let mut out: Vec<NormalModel> =
        group(cc, m.family).iter().map(|g| act(cc, m, g)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The least element of the Γ-orbit.
pub fn canonicalize(cc: &CurveCtx, m: &NormalModel) -> NormalModel {
    let ctx = cc.field();
    match m.family {
        Family::Five => {
            // a' = lambda^5 a depends only on lambda, so only the lambdas
            // reaching the least a' matter
            let a5 = |l: Fq| ctx.mul(ctx.pow(l, 5), m.a);
            let amin = ctx.nonzero_elements().map(a5).min().unwrap();
            ctx.nonzero_elements()
                .filter(|&l| a5(l) == amin)
                .flat_map(|l| ctx.elements().map(move |n| GammaElement::Five(l, n)))
                .map(|g| act(cc, m, &g))
                .min()
                .unwrap()
        }
        f => group(cc, f).iter().map(|g| act(cc, m, g)).min().unwrap(),
    }
}

/// Whether the model is the least element of its orbit.
pub fn is_canonical(cc: &CurveCtx, m: &NormalModel) -> bool {
    let ctx = cc.field();
    match m.family {
        Family::Five => {
            for l in ctx.nonzero_elements() {
                if ctx.mul(ctx.pow(l, 5), m.a) < m.a {
                    return false;
                }
            }
            for &l in cc.mu5() {
                for n in ctx.elements() {
                    if act(cc, m, &GammaElement::Five(l, n)) < *m {
                        return false;
                    }
                }
            }
            true
        }
        f => group(cc, f).iter().all(|g| act(cc, m, g) >= *m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::normalize::extract;

    fn all_models(cc: &CurveCtx, f: Family) -> Vec<NormalModel> {
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

    #[test]
    fn tables_agree_with_substitution() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            let ctx = cc.field();
            for f in Family::ALL {
                let models = all_models(&cc, f);
                let gs = group(&cc, f);
                for model in models.iter().step_by(if m == 3 { 7 } else { 1 }) {
                    let u = model.u(&cc);
                    for g in gs.iter().step_by(if m == 3 { 5 } else { 1 }) {
                        let ug = u.pullback(ctx, &g.to_mobius(&cc));
                        let (direct, _) = extract(&cc, f, &ug).unwrap();
                        assert_eq!(act(&cc, model, g), direct, "{f} {model:?} {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn right_action_axioms() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            for f in Family::ALL {
                let gs = group(&cc, f);
                let stride = if gs.len() > 20 { 7 } else { 1 };
                let models = all_models(&cc, f);
                for model in models.iter().step_by(if m == 3 { 11 } else { 3 }) {
                    let id = GammaElement::identity(f);
                    assert_eq!(act(&cc, model, &id), *model);
                    for g in gs.iter().step_by(stride) {
                        for h in gs.iter().step_by(stride) {
                            let lhs = act(&cc, &act(&cc, model, g), h);
                            let rhs = act(&cc, model, &g.compose(&cc, h));
                            assert_eq!(lhs, rhs);
                        }
                        assert!(g.compose(&cc, &g.inverse(&cc)).is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn split_inversion_example() {
        let cc = CurveCtx::from_m(2).unwrap();
        let m = NormalModel::new(&cc, Family::Split111, Fq(1), Fq(2), Fq(3), Fq::ZERO).unwrap();
        let g = gamma_act(&cc, &m, &GammaElement::Split(1)).unwrap();
        let ctx = cc.field();
        assert_eq!(g.params(), [Fq(2), Fq(1), Fq(3), ctx.as_class(Fq(3))]);
        assert!(gamma_act(&cc, &m, &GammaElement::Quad(1)).is_err());
    }

    #[test]
    fn cubic_generator_has_order_three() {
        for m in 1..=4 {
            let cc = CurveCtx::from_m(m).unwrap();
            assert_eq!(GammaElement::Cubic(1).order(&cc), 3);
            let model =
                NormalModel::new(&cc, Family::Cubic111, Fq(1), Fq(0), Fq(1), Fq::ZERO).unwrap();
            let g = GammaElement::Cubic(1);
            let thrice = (0..3).fold(model, |acc, _| act(&cc, &acc, &g));
            assert_eq!(thrice, model);
        }
    }

    #[test]
    fn orbit_stabilizer_and_canonical_forms() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            for f in Family::ALL {
                let size = group(&cc, f).len();
                for model in all_models(&cc, f).iter().step_by(if m == 3 { 5 } else { 1 }) {
                    let orb = orbit(&cc, model);
                    let stab = group(&cc, f).iter().filter(|g| act(&cc, model, g) == *model).count();
                    assert_eq!(orb.len() * stab, size);
                    let canon = canonicalize(&cc, model);
                    assert_eq!(canon, orb[0]);
                    assert_eq!(canonicalize(&cc, &canon), canon);
                    assert!(is_canonical(&cc, &canon));
                    assert_eq!(is_canonical(&cc, model), canon == *model);
                }
            }
        }
    }

    #[test]
    fn five_orbit_at_q4() {
        let cc = CurveCtx::from_m(2).unwrap();
        let m = NormalModel::new(&cc, Family::Five, Fq(2), Fq(3), Fq(1), Fq::ZERO).unwrap();
        let orb = orbit(&cc, &m);
        assert_eq!(12 % orb.len(), 0);
        assert!(orb.iter().all(|o| canonicalize(&cc, o) == orb[0]));
    }
}
