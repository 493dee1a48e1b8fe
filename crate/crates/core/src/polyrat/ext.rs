//! Extensions F_{2^{dm}} of a base field F_{2^m}, realized as ordinary
//! fields with an explicit embedding of the base.

use super::factor;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq, LinearSolver};

#[derive(Clone, Debug)]
pub struct ExtField {
    base: FieldCtx,
    big: FieldCtx,
    degree: u32,
    // images of the base basis vectors t^0, t^1, ...
    basis_images: Vec<Fq>,
    to_base: LinearSolver,
}

impl ExtField {
    /// The degree-`d` extension, with the base generator sent to the
    /// smallest root of the base modulus.
    pub fn new(base: &FieldCtx, d: u32) -> Result<Self> {
        let m = base.m();
        if d == 0 || d * m > 127 {
            return Err(Error::InvalidInput(format!("extension of degree {d} over m={m} is too large")));
        }
        let big = if d == 1 { base.clone() } else { FieldCtx::new(d * m)? };
        let gen = if d == 1 {
            if m == 1 { Fq::ONE } else { Fq(2) }
        } else {
            let modulus = Poly::from_coeffs(
                (0..=m).map(|i| Fq(base.modulus() >> i & 1)).collect(),
            );
            factor::roots(&big, &modulus)[0]
        };
        let mut basis_images = Vec::with_capacity(m as usize);
        let mut p = Fq::ONE;
        for _ in 0..m {
            basis_images.push(p);
            p = big.mul(p, gen);
        }
        let to_base = LinearSolver::from_images(basis_images.iter().map(|x| x.0));
        Ok(ExtField { base: base.clone(), big, degree: d, basis_images, to_base })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn big(&self) -> &FieldCtx {
        &self.big
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, x: Fq) -> Fq {
        let mut acc = 0u128;
        let mut bits = x.0;
        let mut i = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                acc ^= self.basis_images[i].0;
            }
            bits >>= 1;
            i += 1;
        }
        Fq(acc)
    }

    /// The base element mapping to `y`, if `y` lies in the base field.
    pub fn to_base(&self, y: Fq) -> Option<Fq> {
        self.to_base.solve(y)
    }

    pub fn embed_poly(&self, p: &Poly) -> Poly {
        p.map(|c| self.embed(c))
    }

    pub fn embed_ratfn(&self, u: &RatFn) -> RatFn {
        u.map_embedding(|c| self.embed(c))
    }

    pub fn poly_to_base(&self, p: &Poly) -> Option<Poly> {
        let c: Option<Vec<Fq>> = p.coeffs().iter().map(|&c| self.to_base(c)).collect();
        c.map(Poly::from_coeffs)
    }

    pub fn ratfn_to_base(&self, u: &RatFn) -> Option<RatFn> {
        let num = self.poly_to_base(u.num())?;
        let den = self.poly_to_base(u.den())?;
        RatFn::new(&self.base, num, den).ok()
    }

    /// The q-power Frobenius, generating Gal(big/base).
    pub fn frobenius(&self, y: Fq) -> Fq {
        self.big.frobenius(y, self.base.m())
    }

    /// Roots in the big field of a polynomial over the base.
    pub fn roots_in_big(&self, f: &Poly) -> Vec<Fq> {
        factor::roots(&self.big, &self.embed_poly(f))
    }

    /// Trace of the big field element down to the base.
    pub fn relative_trace(&self, y: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        let mut z = y;
        for _ in 0..self.degree {
            acc = self.big.add(acc, z);
            z = self.frobenius(z);
        }
        acc
    }
}
