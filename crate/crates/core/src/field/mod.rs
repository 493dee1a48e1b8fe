//! Arithmetic in F_{2^m} in a polynomial basis.
//!
//! Elements are plain bit vectors ([`Fq`]); every operation goes through a
//! [`FieldCtx`], which owns the modulus and a few precomputed tables. For
//! formula-heavy code, [`FieldCtx::el`] wraps an element so the usual
//! operators can be used.

pub mod gf2;
pub mod linear;
pub mod matrix;

use std::fmt;
use std::ops::{Add, Div, Mul};

use crate::error::{Error, Result};
pub use linear::{F2Subspace, LinearSolver, LinearizedPoly};

/// An element of F_{2^m}: bit i is the coefficient of t^i.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u128);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Largest degree for which log/exp tables are built.
const TABLE_BITS: u32 = 16;

#[derive(Clone, Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field F_{2^m} = F_2[t]/(modulus).
#[derive(Clone, Debug)]
pub struct FieldCtx {
    m: u32,
    modulus: u128,
    mask: u128,
    trace_mask: u128,
    tables: Option<Tables>,
    as_solver: LinearSolver,
    as_image: F2Subspace,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// F_{2^m} with the smallest irreducible modulus of degree m.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=127).contains(&m) {
            return Err(Error::InvalidInput(format!("extension degree {m} out of range 1..=127")));
        }
        Self::with_modulus(m, gf2::smallest_irreducible(m))
    }

    /// F_{2^m} with an explicit modulus (bit i = coefficient of t^i, bit m set).
    pub fn with_modulus(m: u32, modulus: u128) -> Result<Self> {
        if !(1..=127).contains(&m) {
            return Err(Error::InvalidInput(format!("extension degree {m} out of range 1..=127")));
        }
        if gf2::degree(modulus) != Some(m) || !gf2::is_irreducible(modulus) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:x} is not an irreducible polynomial of degree {m}"
            )));
        }
        let mask = (1u128 << m) - 1;
        let mut ctx = FieldCtx {
            m,
            modulus,
            mask,
            trace_mask: 0,
            tables: None,
            as_solver: LinearSolver::from_images(std::iter::empty()),
            as_image: F2Subspace::zero(),
        };
        if m <= TABLE_BITS {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.trace_mask = (0..m)
            .filter(|&i| ctx.trace_slow(Fq(1 << i)) == 1)
            .map(|i| 1u128 << i)
            .sum();
        ctx.as_solver = LinearSolver::new(&ctx, |x| ctx.add(x, ctx.square(x)));
        ctx.as_image = ctx.as_solver.image();
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// q = 2^m.
    pub fn order(&self) -> u128 {
        1u128 << self.m
    }

    pub fn el(&self, x: Fq) -> El<'_> {
        El { ctx: self, v: x }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.order()).map(Fq)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (1..self.order()).map(Fq)
    }

    /// Checks that `x` is a valid element of this field.
    pub fn check(&self, x: Fq) -> Result<Fq> {
        if x.0 & !self.mask == 0 {
            Ok(x)
        } else {
            Err(Error::InvalidInput(format!("{x} is not an element of F_2^{}", self.m)))
        }
    }

    fn build_tables(&self) -> Tables {
        let q = self.order();
        let n = q - 1;
        let primes = gf2::factor_integer(n);
        let g = (1..q)
            .map(Fq)
            .find(|&g| primes.iter().all(|&p| self.pow_slow(g, n / p) != Fq::ONE))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = Fq::ONE;
        for i in 0..n as usize {
            exp[i] = x.0 as u32;
            exp[i + n as usize] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        Tables { exp, log }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(a.0 ^ b.0)
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let (mut a, mut b) = (a.0, b.0);
        let mut acc = 0u128;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            let carry = a >> (self.m - 1) & 1;
            a = (a << 1) & self.mask;
            if carry == 1 {
                a ^= self.modulus & self.mask;
            }
        }
        Fq(acc)
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    Fq::ZERO
                } else {
                    Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u128)
                }
            }
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Fq) -> Fq {
        self.mul(a, a)
    }

    fn pow_slow(&self, a: Fq, mut e: u128) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^e by square-and-multiply (0^0 = 1).
    pub fn pow(&self, a: Fq, e: u128) -> Fq {
        if let Some(t) = &self.tables {
            if e == 0 {
                return Fq::ONE;
            }
            if a.0 == 0 {
                return Fq::ZERO;
            }
            let n = self.order() - 1;
            let l = (t.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return Fq(t.exp[l] as u128);
        }
        let mut base = a;
        let mut acc = Fq::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// a^(2^k).
    pub fn frobenius(&self, a: Fq, k: u32) -> Fq {
        (0..k).fold(a, |x, _| self.square(x))
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = self.order() as usize - 1;
                Fq(t.exp[(n - t.log[a.0 as usize] as usize) % n] as u128)
            }
            None => self.pow(a, self.order() - 2),
        })
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn trace_slow(&self, x: Fq) -> u8 {
        let mut acc = Fq::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.square(y);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// Absolute trace x + x^2 + ... + x^(2^(m-1)), as 0 or 1.
    pub fn trace(&self, x: Fq) -> u8 {
        ((x.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// The square root x^(2^(m-1)), inverse of the Frobenius.
    pub fn sqrt(&self, x: Fq) -> Fq {
        if let Some(t) = &self.tables {
            if x.0 == 0 {
                return x;
            }
            let n = self.order() as usize - 1;
            let l = t.log[x.0 as usize] as usize;
            let half = if l % 2 == 0 { l / 2 } else { (l + n) / 2 };
            return Fq(t.exp[half] as u128);
        }
        self.frobenius(x, self.m - 1)
    }

    /// Solutions {w, w+1} of w + w^2 = c (smaller first), or `None` when
    /// c has trace 1.
    pub fn solve_artin_schreier(&self, c: Fq) -> Option<(Fq, Fq)> {
        if self.trace(c) != 0 {
            return None;
        }
        let w = if self.m % 2 == 1 {
            // half-trace
            let mut acc = Fq::ZERO;
            let mut y = c;
            for _ in 0..=(self.m - 1) / 2 {
                acc = self.add(acc, y);
                y = self.square(self.square(y));
            }
            acc
        } else {
            self.as_solver.solve(c)?
        };
        debug_assert_eq!(self.add(w, self.square(w)), c);
        let w1 = self.add(w, Fq::ONE);
        Some(if w < w1 { (w, w1) } else { (w1, w) })
    }

    /// AS(k) = {x + x^2}, the trace-zero hyperplane.
    pub fn as_image(&self) -> &F2Subspace {
        &self.as_image
    }

    /// Canonical representative of the class of x in k/AS(k): 0 or r0.
    pub fn as_class(&self, x: Fq) -> Fq {
        self.as_image.reduce(x)
    }

    /// The smallest element of trace one.
    pub fn non_trace_element(&self) -> Fq {
        self.as_image.reduce(Fq(self.trace_mask & self.trace_mask.wrapping_neg()))
    }

    /// Coset representatives of k modulo an F_2-subspace.
    pub fn coset_reps(&self, image: &F2Subspace) -> Vec<Fq> {
        image.coset_reps(self)
    }

    pub fn linearized_kernel(&self, l: &LinearizedPoly) -> F2Subspace {
        l.kernel(self)
    }

    /// Coset representatives of k*/(k*)^5 (minimal element of each class, in
    /// increasing order) and the group mu_5(k) in increasing order.
    pub fn fifth_power_classes(&self) -> (Vec<Fq>, Vec<Fq>) {
        let n = self.order() - 1;
        if n % 5 != 0 {
            return (vec![Fq::ONE], vec![Fq::ONE]);
        }
        let e = n / 5;
        let mut reps: Vec<(Fq, Fq)> = Vec::new();
        let mut zeta = None;
        for x in self.nonzero_elements() {
            let chi = self.pow(x, e);
            if zeta.is_none() && chi != Fq::ONE {
                zeta = Some(chi);
            }
            if !reps.iter().any(|&(c, _)| c == chi) {
                reps.push((chi, x));
                if reps.len() == 5 {
                    break;
                }
            }
        }
        let zeta = zeta.expect("5 divides q-1");
        let mut mu5: Vec<Fq> = (0..5).map(|i| self.pow(zeta, i)).collect();
        mu5.sort_unstable();
        let mut reps: Vec<Fq> = reps.into_iter().map(|(_, x)| x).collect();
        reps.sort_unstable();
        (reps, mu5)
    }

    pub fn parse_elem(&self, s: &str) -> Result<Fq> {
        let v = u128::from_str_radix(s.trim(), 16)
            .map_err(|_| Error::Parse(format!("bad field element '{s}'")))?;
        self.check(Fq(v)).map_err(|e| Error::Parse(e.to_string()))
    }

    /// `m=<int>` plus `mod=<hex>` when the modulus is not the default one.
    pub fn describe(&self) -> String {
        let default = gf2::smallest_irreducible(self.m);
        if self.modulus == default {
            format!("m={}", self.m)
        } else {
            format!("m={} mod={:x}", self.m, self.modulus)
        }
    }
}

/// A field element bundled with its context, for writing formulas.
#[derive(Clone, Copy)]
pub struct El<'a> {
    ctx: &'a FieldCtx,
    v: Fq,
}

impl<'a> El<'a> {
    pub fn get(self) -> Fq {
        self.v
    }

    pub fn pow(self, e: u128) -> Self {
        El { ctx: self.ctx, v: self.ctx.pow(self.v, e) }
    }

    pub fn sq(self) -> Self {
        El { ctx: self.ctx, v: self.ctx.square(self.v) }
    }

    pub fn sqrt(self) -> Self {
        El { ctx: self.ctx, v: self.ctx.sqrt(self.v) }
    }

    pub fn inv(self) -> Self {
        El { ctx: self.ctx, v: self.ctx.inv(self.v).expect("inverse of zero") }
    }

    pub fn is_zero(self) -> bool {
        self.v.is_zero()
    }
}

impl<'a> Add for El<'a> {
    type Output = El<'a>;
    fn add(self, o: Self) -> Self {
        El { ctx: self.ctx, v: Fq(self.v.0 ^ o.v.0) }
    }
}

impl<'a> Add<Fq> for El<'a> {
    type Output = El<'a>;
    fn add(self, o: Fq) -> Self {
        El { ctx: self.ctx, v: Fq(self.v.0 ^ o.0) }
    }
}

impl<'a> Mul for El<'a> {
    type Output = El<'a>;
    fn mul(self, o: Self) -> Self {
        El { ctx: self.ctx, v: self.ctx.mul(self.v, o.v) }
    }
}

impl<'a> Mul<Fq> for El<'a> {
    type Output = El<'a>;
    fn mul(self, o: Fq) -> Self {
        El { ctx: self.ctx, v: self.ctx.mul(self.v, o) }
    }
}

impl<'a> Div for El<'a> {
    type Output = El<'a>;
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl PartialEq for El<'_> {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v
    }
}
