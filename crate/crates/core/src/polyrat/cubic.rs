//! Generators of cubic extensions with minimal polynomial x^3 + sx + s.

use super::factor;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::{matrix, FieldCtx, Fq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicNormal {
    pub s: Fq,
    /// The new generator as a polynomial in a root of the input cubic.
    pub generator: Poly,
    /// A root of w + w^2 = s + 1; the conjugates of the new generator theta
    /// are theta(theta + w) and theta(theta + w + 1).
    pub w: Fq,
}

/// Minimal polynomial over k of g(theta), where theta is a root of the
/// irreducible cubic `f`.
pub fn min_poly(ctx: &FieldCtx, f: &Poly, g: &Poly) -> Result<Poly> {
    let mut powers = vec![Poly::one()];
    for i in 1..=3 {
        powers.push(powers[i - 1].mul(ctx, g).rem(ctx, f)?);
    }
    let rows: Vec<Vec<Fq>> = (0..3).map(|j| (0..3).map(|i| powers[i].coeff(j)).collect()).collect();
    let rhs: Vec<Fq> = (0..3).map(|j| powers[3].coeff(j)).collect();
    let c = matrix::solve(ctx, &rows, &rhs)
        .ok_or_else(|| Error::InvalidInput("element does not generate the cubic extension".into()))?;
    Ok(Poly::from_coeffs(vec![c[0], c[1], c[2], Fq::ONE]))
}

pub fn cubic_normalize(ctx: &FieldCtx, f: &Poly) -> Result<CubicNormal> {
    if f.degree() != Some(3) || !factor::is_irreducible(ctx, f) {
        return Err(Error::InvalidInput(format!("{f} is not an irreducible cubic")));
    }
    let f = f.monic(ctx);
    // theta + Tr(theta) has trace zero
    let mut g = Poly::linear(f.coeff(2));
    let mut mp = min_poly(ctx, &f, &g)?;
    if mp.coeff(1).is_zero() {
        g = g.add(&g.square(ctx)).rem(ctx, &f)?;
        mp = min_poly(ctx, &f, &g)?;
    }
    let (a, b) = (mp.coeff(1), mp.coeff(0));
    debug_assert!(mp.coeff(2).is_zero() && !a.is_zero());
    let lambda = ctx.div(a, b)?;
    let g = g.scale(ctx, lambda);
    let s = ctx.div(ctx.pow(a, 3), ctx.square(b))?;
    let (w, _) = ctx
        .solve_artin_schreier(ctx.add(s, Fq::ONE))
        .ok_or_else(|| Error::Internal("cubic extension of a finite field is cyclic".into()))?;
    Ok(CubicNormal { s, generator: g, w })
}
