use std::fmt;

use super::ext::ExtField;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// x -> (ax+b)/(cx+d), scaled so the first nonzero entry is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius {
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    pub d: Fq,
}

/// A point of the projective line over some field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Point {
    Fin(Fq),
    Inf,
}

impl Mobius {
    pub fn new(ctx: &FieldCtx, a: Fq, b: Fq, c: Fq, d: Fq) -> Result<Self> {
        let det = ctx.add(ctx.mul(a, d), ctx.mul(b, c));
        if det.is_zero() {
            return Err(Error::InvalidInput("singular Mobius transformation".into()));
        }
        let lead = [a, b, c, d].into_iter().find(|e| !e.is_zero()).unwrap();
        let s = ctx.inv(lead)?;
        Ok(Mobius { a: ctx.mul(a, s), b: ctx.mul(b, s), c: ctx.mul(c, s), d: ctx.mul(d, s) })
    }

    pub fn identity() -> Self {
        Mobius { a: Fq::ONE, b: Fq::ZERO, c: Fq::ZERO, d: Fq::ONE }
    }

    /// x -> lambda x + nu.
    pub fn affine(ctx: &FieldCtx, lambda: Fq, nu: Fq) -> Self {
        Mobius::new(ctx, lambda, nu, Fq::ZERO, Fq::ONE).expect("lambda is nonzero")
    }

    pub fn is_identity(&self) -> bool {
        *self == Mobius::identity()
    }

    /// self o other, i.e. x -> self(other(x)).
    pub fn compose(&self, ctx: &FieldCtx, o: &Mobius) -> Mobius {
        let m = |x: Fq, y: Fq, z: Fq, w: Fq| ctx.add(ctx.mul(x, y), ctx.mul(z, w));
        Mobius::new(
            ctx,
            m(self.a, o.a, self.b, o.c),
            m(self.a, o.b, self.b, o.d),
            m(self.c, o.a, self.d, o.c),
            m(self.c, o.b, self.d, o.d),
        )
        .expect("product of invertible maps")
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Mobius {
        Mobius::new(ctx, self.d, self.b, self.c, self.a).expect("invertible")
    }

    pub fn apply(&self, ctx: &FieldCtx, p: P1Point) -> P1Point {
        match p {
            P1Point::Inf => {
                if self.c.is_zero() {
                    P1Point::Inf
                } else {
                    P1Point::Fin(ctx.div(self.a, self.c).unwrap())
                }
            }
            P1Point::Fin(x) => {
                let num = ctx.add(ctx.mul(self.a, x), self.b);
                let den = ctx.add(ctx.mul(self.c, x), self.d);
                match ctx.div(num, den) {
                    Ok(v) => P1Point::Fin(v),
                    Err(_) => P1Point::Inf,
                }
            }
        }
    }

    /// Value at a point of k, `None` when it is sent to infinity.
    pub fn eval(&self, ctx: &FieldCtx, x: Fq) -> Option<Fq> {
        match self.apply(ctx, P1Point::Fin(x)) {
            P1Point::Fin(v) => Some(v),
            P1Point::Inf => None,
        }
    }

    pub fn map_embedding(&self, f: impl Fn(Fq) -> Fq) -> Mobius {
        Mobius { a: f(self.a), b: f(self.b), c: f(self.c), d: f(self.d) }
    }

    /// Every element of PGL_2(k), in increasing order.
    pub fn all(ctx: &FieldCtx) -> Vec<Mobius> {
        let mut out = Vec::new();
        for a in ctx.elements() {
            for b in ctx.elements() {
                for c in ctx.elements() {
                    for d in ctx.elements() {
                        if let Ok(g) = Mobius::new(ctx, a, b, c, d) {
                            if g == (Mobius { a, b, c, d }) {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}x+{})/({}x+{})", self.a, self.b, self.c, self.d)
    }
}

/// The map sending z0 -> inf, z1 -> 0, z2 -> 1.
fn to_standard(ctx: &FieldCtx, z: [P1Point; 3]) -> Result<Mobius> {
    use P1Point::*;
    let add = |x, y| ctx.add(x, y);
    let (a, b, c, d) = match z {
        [Inf, Fin(z1), Fin(z2)] => (Fq::ONE, z1, Fq::ZERO, add(z2, z1)),
        [Fin(z0), Inf, Fin(z2)] => (Fq::ZERO, add(z2, z0), Fq::ONE, z0),
        [Fin(z0), Fin(z1), Inf] => (Fq::ONE, z1, Fq::ONE, z0),
        [Fin(z0), Fin(z1), Fin(z2)] => {
            let e = add(z2, z0);
            let f = add(z2, z1);
            (e, ctx.mul(z1, e), f, ctx.mul(z0, f))
        }
        _ => return Err(Error::InvalidInput("repeated point".into())),
    };
    Mobius::new(ctx, a, b, c, d)
        .map_err(|_| Error::InvalidInput("repeated point".into()))
}

/// The unique Mobius map over `ctx` sending src[i] to dst[i].
pub fn mobius_through(ctx: &FieldCtx, src: [P1Point; 3], dst: [P1Point; 3]) -> Result<Mobius> {
    let ts = to_standard(ctx, src)?;
    let td = to_standard(ctx, dst)?;
    Ok(td.inverse(ctx).compose(ctx, &ts))
}

/// The Mobius map sending src[i] to dst[i], where the points live in the
/// extension `ext`; fails with `NotRational` when the map is not defined
/// over the base field.
pub fn mobius_from_triple(
    ext: &ExtField,
    src: [P1Point; 3],
    dst: [P1Point; 3],
) -> Result<Mobius> {
    let g = mobius_through(ext.big(), src, dst)?;
    let down = |x: Fq| ext.to_base(x).ok_or(Error::NotRational);
    Ok(Mobius { a: down(g.a)?, b: down(g.b)?, c: down(g.c)?, d: down(g.d)? })
}
