//! Normal forms y^2 + y = u(x) for the five ramification types, the groups
//! acting on their parameters, and automorphism groups over k.

mod aut;
mod gamma;
mod normalize;

use std::sync::OnceLock;

pub use aut::{autk, isotropy, kernel_delta, AutKDescriptor, DeltaData, Lift, ReducedGroup};
pub use gamma::{canonicalize, gamma_act, group, is_canonical, orbit, GammaElement};
pub use normalize::{extract, is_isomorphic, normalize, to_normal_form, Iso};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::polyrat::{factor, ExtField, Family, Poly, RatFn};

/// A base field together with the fixed representatives every normal form
/// refers to.
#[derive(Debug)]
pub struct CurveCtx {
    field: FieldCtx,
    r0: Fq,
    s0: Fq,
    w0: Fq,
    mu5: Vec<Fq>,
    fifth_reps: Vec<Fq>,
    ext2: OnceLock<ExtField>,
    ext3: OnceLock<ExtField>,
}

impl CurveCtx {
    pub fn new(field: FieldCtx) -> Result<Self> {
        let r0 = field.non_trace_element();
        let s0 = field
            .nonzero_elements()
            .find(|&s| {
                let f = Poly::from_coeffs(vec![s, s, Fq::ZERO, Fq::ONE]);
                factor::roots(&field, &f).is_empty()
            })
            .ok_or_else(|| Error::Internal("no irreducible x^3+sx+s".into()))?;
        let (w0, _) = field
            .solve_artin_schreier(field.add(s0, Fq::ONE))
            .ok_or_else(|| Error::Internal("s0 + 1 is not in AS(k)".into()))?;
        let (fifth_reps, mu5) = field.fifth_power_classes();
        Ok(CurveCtx {
            field,
            r0,
            s0,
            w0,
            mu5,
            fifth_reps,
            ext2: OnceLock::new(),
            ext3: OnceLock::new(),
        })
    }

    pub fn from_m(m: u32) -> Result<Self> {
        Self::new(FieldCtx::new(m)?)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// The least element of trace one.
    pub fn r0(&self) -> Fq {
        self.r0
    }

    /// The least s with x^3 + sx + s irreducible.
    pub fn s0(&self) -> Fq {
        self.s0
    }

    /// The smaller root of w + w^2 = s0 + 1.
    pub fn w0(&self) -> Fq {
        self.w0
    }

    pub fn mu5(&self) -> &[Fq] {
        &self.mu5
    }

    /// Minimal representatives of k*/(k*)^5.
    pub fn fifth_power_reps(&self) -> &[Fq] {
        &self.fifth_reps
    }

    pub fn ext2(&self) -> &ExtField {
        self.ext2.get_or_init(|| ExtField::new(&self.field, 2).expect("2m <= 127"))
    }

    pub fn ext3(&self) -> &ExtField {
        self.ext3.get_or_init(|| ExtField::new(&self.field, 3).expect("3m <= 127"))
    }

    pub fn quad_den(&self) -> Poly {
        Poly::from_coeffs(vec![self.r0, Fq::ONE, Fq::ONE])
    }

    pub fn cubic_den(&self) -> Poly {
        Poly::from_coeffs(vec![self.s0, self.s0, Fq::ZERO, Fq::ONE])
    }
}

/// A member C_{abcd} of one of the five families. `d` is always the
/// canonical representative of its class in k/AS(k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalModel {
    pub family: Family,
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    pub d: Fq,
}

impl NormalModel {
    pub fn new(cc: &CurveCtx, family: Family, a: Fq, b: Fq, c: Fq, d: Fq) -> Result<Self> {
        let ctx = cc.field();
        for x in [a, b, c, d] {
            ctx.check(x)?;
        }
        let z = |x: Fq| x.is_zero();
        let ok = match family {
            Family::Split111 => !z(a) && !z(b) && !z(c),
            Family::Quad111 => !z(a) && !(z(b) && z(c)),
            Family::Cubic111 => !(z(a) && z(b) && z(c)),
            Family::OneThree => !z(a) && !z(c),
            Family::Five => !z(a),
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "parameters ({a},{b},{c}) outside the {family} family"
            )));
        }
        Ok(NormalModel { family, a, b, c, d: ctx.as_class(d) })
    }

    pub fn params(&self) -> [Fq; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The right-hand side u(x) of the model.
    pub fn u(&self, cc: &CurveCtx) -> RatFn {
        let ctx = cc.field();
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let add = |x, y| ctx.add(x, y);
        let mul = |x, y| ctx.mul(x, y);
        let (num, den) = match self.family {
            Family::Split111 => (
                vec![b, add(d, add(b, c)), add(a, d), a],
                vec![Fq::ZERO, Fq::ONE, Fq::ONE],
            ),
            Family::Quad111 => {
                let r = cc.r0();
                (
                    vec![add(mul(d, r), c), add(add(mul(a, r), d), b), add(a, d), a],
                    cc.quad_den().coeffs().to_vec(),
                )
            }
            Family::Cubic111 => {
                let s = cc.s0();
                let ds = mul(d, s);
                (vec![add(ds, c), add(ds, b), a, d], cc.cubic_den().coeffs().to_vec())
            }
            Family::OneThree => (vec![c, d, b, Fq::ZERO, a], vec![Fq::ZERO, Fq::ONE]),
            Family::Five => (vec![d, Fq::ZERO, Fq::ZERO, c, b, a], vec![Fq::ONE]),
        };
        RatFn::new(ctx, Poly::from_coeffs(num), Poly::from_coeffs(den))
            .expect("denominator is nonzero")
    }
}

/// Either a normal-form model or an arbitrary y^2 + y = u(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    Normal(NormalModel),
    Raw(RatFn),
}

impl CurveModel {
    pub fn u(&self, cc: &CurveCtx) -> RatFn {
        match self {
            CurveModel::Normal(n) => n.u(cc),
            CurveModel::Raw(u) => u.clone(),
        }
    }
}

impl From<NormalModel> for CurveModel {
    fn from(n: NormalModel) -> Self {
        CurveModel::Normal(n)
    }
}
