use std::fmt;

use super::mobius::Mobius;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// A rational function num/den in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(ctx: &FieldCtx, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(ctx, &num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(ctx, &g)?, den.div_exact(ctx, &g)?)
        };
        let l = den.lead();
        if l != Fq::ONE {
            let li = ctx.inv(l)?;
            num = num.scale(ctx, li);
            den = den.scale(ctx, li);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value when the function is constant.
    pub fn as_constant(&self) -> Option<Fq> {
        (self.den.is_one() && self.num.deg() <= 0).then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, ctx: &FieldCtx, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(ctx, self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let num = self.num.mul(ctx, &o.den).add(&o.num.mul(ctx, &self.den));
        RatFn::new(ctx, num, self.den.mul(ctx, &o.den)).unwrap()
    }

    pub fn add_const(&self, ctx: &FieldCtx, c: Fq) -> RatFn {
        self.add(ctx, &RatFn::constant(c))
    }

    pub fn mul(&self, ctx: &FieldCtx, o: &RatFn) -> RatFn {
        RatFn::new(ctx, self.num.mul(ctx, &o.num), self.den.mul(ctx, &o.den)).unwrap()
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Fq) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(ctx, c), den: self.den.clone() }
    }

    pub fn square(&self, ctx: &FieldCtx) -> RatFn {
        // squaring keeps coprimality and monicity
        RatFn { num: self.num.square(ctx), den: self.den.square(ctx) }
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Result<RatFn> {
        RatFn::new(ctx, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, ctx: &FieldCtx, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul(ctx, &o.inv(ctx)?))
    }

    /// self + v + v^2.
    pub fn add_as(&self, ctx: &FieldCtx, v: &RatFn) -> RatFn {
        self.add(ctx, &v.add(ctx, &v.square(ctx)))
    }

    /// Value at a point of k, or `None` at a pole.
    pub fn eval(&self, ctx: &FieldCtx, x: Fq) -> Option<Fq> {
        let d = self.den.eval(ctx, x);
        ctx.div(self.num.eval(ctx, x), d).ok()
    }

    /// Order of the pole at infinity (0 when there is none).
    pub fn pole_order_at_infinity(&self) -> usize {
        (self.num.deg() - self.den.deg()).max(0) as usize
    }

    /// Applies a coefficient map that is a ring embedding (so monic stays
    /// monic and coprime stays coprime).
    pub fn map_embedding(&self, f: impl Fn(Fq) -> Fq) -> RatFn {
        RatFn { num: self.num.map(&f), den: self.den.map(&f) }
    }

    /// u(gamma(x)) in lowest terms.
    pub fn pullback(&self, ctx: &FieldCtx, g: &Mobius) -> RatFn {
        let n = self.num.deg().max(self.den.deg()).max(0) as usize;
        let top = Poly::from_coeffs(vec![g.b, g.a]);
        let bottom = Poly::from_coeffs(vec![g.d, g.c]);
        let hom = |p: &Poly| homogenized(ctx, p, n, &top, &bottom);
        RatFn::new(ctx, hom(&self.num), hom(&self.den)).expect("Mobius maps are invertible")
    }
}

/// sum p_i top^i bottom^(n-i).
fn homogenized(ctx: &FieldCtx, p: &Poly, n: usize, top: &Poly, bottom: &Poly) -> Poly {
    let mut tops = vec![Poly::one()];
    let mut bottoms = vec![Poly::one()];
    for i in 1..=n {
        tops.push(tops[i - 1].mul(ctx, top));
        bottoms.push(bottoms[i - 1].mul(ctx, bottom));
    }
    let mut acc = Poly::zero();
    for (i, &c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&tops[i].mul(ctx, &bottoms[n - i]).scale(ctx, c));
        }
    }
    acc
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
