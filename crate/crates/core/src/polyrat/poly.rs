use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// A univariate polynomial over a binary field, coefficients listed from
/// the constant term up. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fq>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Fq::ONE)
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Fq::ZERO, Fq::ONE] }
    }

    pub fn constant(c: Fq) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Fq, n: usize) -> Self {
        let mut v = vec![Fq::ZERO; n + 1];
        v[n] = c;
        Poly::from_coeffs(v)
    }

    /// x + c.
    pub fn linear(c: Fq) -> Self {
        Poly { coeffs: vec![c, Fq::ONE] }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    pub fn map(&self, f: impl Fn(Fq) -> Fq) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| Fq(self.coeff(i).0 ^ o.coeff(i).0)).collect())
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Fq) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect() }
    }

    pub fn mul(&self, ctx: &FieldCtx, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn square(&self, ctx: &FieldCtx) -> Poly {
        let mut out = vec![Fq::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[2 * i] = ctx.square(a);
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, ctx: &FieldCtx, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            base = base.square(ctx);
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, ctx: &FieldCtx, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = ctx.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Fq::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let f = ctx.mul(c, inv_lead);
            q[i - dd] = f;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = ctx.add(r[i - dd + j], ctx.mul(f, b));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, ctx: &FieldCtx, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(ctx, d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, ctx: &FieldCtx, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(ctx, d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.lead() {
            Fq::ZERO | Fq::ONE => self.clone(),
            l => self.scale(ctx, ctx.inv(l).expect("nonzero lead")),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inv_mod(&self, ctx: &FieldCtx, m: &Poly) -> Option<Poly> {
        // extended Euclid tracking the coefficient of `self`
        let (mut r0, mut r1) = (m.clone(), self.rem(ctx, m).ok()?);
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(ctx, &r1).ok()?;
            let s = s0.add(&q.mul(ctx, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = ctx.inv(r0.lead()).ok()?;
        s0.scale(ctx, c).rem(ctx, m).ok()
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Fq) -> Fq {
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { Fq::ZERO })
                .collect(),
        )
    }

    /// self(g(x)).
    pub fn compose(&self, ctx: &FieldCtx, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(ctx, g).add(&Poly::constant(c)))
    }

    /// Square root of a polynomial in x^2 (all odd coefficients zero).
    pub fn sqrt(&self, ctx: &FieldCtx) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(self.coeffs.iter().step_by(2).map(|&c| ctx.sqrt(c)).collect()))
    }

    /// self^(2^k) mod m.
    pub fn frobenius_mod(&self, ctx: &FieldCtx, k: u32, m: &Poly) -> Poly {
        let mut h = self.rem(ctx, m).expect("nonzero modulus");
        for _ in 0..k {
            h = h.square(ctx).rem(ctx, m).expect("nonzero modulus");
        }
        h
    }

    /// Total order: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, o: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Poly {
    fn cmp(&self, o: &Self) -> Ordering {
        self.canonical_cmp(o)
    }
}

/// Comma-separated hex coefficients, lowest degree first; `0` for zero.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
