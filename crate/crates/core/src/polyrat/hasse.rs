//! Pole structure of u(x) and reduction modulo AS(k(x)) = {v + v^2}.

use std::fmt;

use super::factor;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// A closed point of the projective line over k: a monic irreducible
/// polynomial, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// The five ramification types of genus-2 curves, which are also the five
/// normal-form families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Split111,
    Quad111,
    Cubic111,
    OneThree,
    Five,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Split111, Family::Quad111, Family::Cubic111, Family::OneThree, Family::Five];

    pub fn name(self) -> &'static str {
        match self {
            Family::Split111 => "split111",
            Family::Quad111 => "quad111",
            Family::Cubic111 => "cubic111",
            Family::OneThree => "onethree",
            Family::Five => "five",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamProfile {
    pub kind: Family,
    /// Poles with their (odd) orders, sorted by place.
    pub poles: Vec<(Place, usize)>,
}

impl RamProfile {
    /// Degree of the different, sum of deg(P) (order + 1); always 6.
    pub fn different_degree(&self) -> usize {
        self.poles.iter().map(|(p, e)| p.degree() * (e + 1)).sum()
    }
}

/// Poles of u with their orders, sorted by place (finite places first).
pub fn poles(ctx: &FieldCtx, u: &RatFn) -> Vec<(Place, usize)> {
    let mut out: Vec<(Place, usize)> = if u.den().deg() > 0 {
        factor::factor(ctx, u.den())
            .expect("denominator is nonzero")
            .into_iter()
            .map(|(p, e)| (Place::Finite(p), e))
            .collect()
    } else {
        Vec::new()
    };
    let inf = u.pole_order_at_infinity();
    if inf > 0 {
        out.push((Place::Infinity, inf));
    }
    out
}

/// Removes every pole of even order by adding elements of AS(k(x)).
/// Returns (u', v) with u' = u + v + v^2 and every pole of u' of odd order.
pub fn as_reduce(ctx: &FieldCtx, u: &RatFn) -> (RatFn, RatFn) {
    let mut u = u.clone();
    let mut witness = RatFn::zero();
    loop {
        let even = poles(ctx, &u)
            .into_iter()
            .filter(|(_, e)| e % 2 == 0)
            .max_by(|(p, e), (q, f)| e.cmp(f).then_with(|| q.cmp(p)));
        let Some((place, order)) = even else {
            return (u, witness);
        };
        let n = order / 2;
        let v = match place {
            Place::Infinity => {
                let lead = u.num().lead();
                RatFn::from_poly(Poly::monomial(ctx.sqrt(lead), n))
            }
            Place::Finite(p) => {
                let pn = p.pow(ctx, n);
                let rest = u.den().div_exact(ctx, &pn.square(ctx)).unwrap();
                let alpha = u
                    .num()
                    .mul(ctx, &rest.inv_mod(ctx, &p).expect("coprime to the pole"))
                    .rem(ctx, &p)
                    .unwrap();
                // square root in the residue field of degree deg(p) over k
                let k = p.degree().unwrap() as u32 * ctx.m() - 1;
                let h = alpha.frobenius_mod(ctx, k, &p);
                RatFn::new(ctx, h, pn).unwrap()
            }
        };
        u = u.add_as(ctx, &v);
        witness = witness.add(ctx, &v);
    }
}

/// Ramification type of a curve y^2 + y = u(x), where u has no poles of
/// even order.
pub fn ram_profile(ctx: &FieldCtx, u: &RatFn) -> Result<RamProfile> {
    let poles = poles(ctx, u);
    if poles.iter().any(|(_, e)| e % 2 == 0) {
        return Err(Error::InvalidInput("u has poles of even order; reduce it first".into()));
    }
    if poles.is_empty() {
        return Err(Error::NotGenusTwo(
            "u is constant modulo AS(k(x)), the curve is not geometrically irreducible".into(),
        ));
    }
    let diff: usize = poles.iter().map(|(p, e)| p.degree() * (e + 1)).sum();
    if diff != 6 {
        return Err(Error::NotGenusTwo(format!("the curve has genus {}", diff / 2 - 1)));
    }
    let mut shape: Vec<(usize, usize)> = poles.iter().map(|(p, e)| (*e, p.degree())).collect();
    shape.sort_unstable();
    let kind = match shape.as_slice() {
        [(1, 1), (1, 1), (1, 1)] => Family::Split111,
        [(1, 1), (1, 2)] => Family::Quad111,
        [(1, 3)] => Family::Cubic111,
        [(1, 1), (3, 1)] => Family::OneThree,
        [(5, 1)] => Family::Five,
        _ => unreachable!("every odd pole pattern with different degree 6 is listed"),
    };
    Ok(RamProfile { kind, poles })
}
