//! Factorization over F_{2^m}: square-free decomposition, distinct-degree
//! splitting, then equal-degree splitting with trace maps.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

pub const DEFAULT_SEED: u64 = 0x67_32_63_75_72_76_65;

static SPLIT_SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Seed for the random polynomials used in equal-degree splitting. Results
/// never depend on it, only the amount of work does.
pub fn set_split_seed(seed: u64) {
    SPLIT_SEED.store(seed, Ordering::Relaxed);
}

fn rng_for(f: &Poly) -> ChaCha8Rng {
    let mut seed = SPLIT_SEED.load(Ordering::Relaxed);
    for c in f.coeffs() {
        let folded = c.0 as u64 ^ (c.0 >> 64) as u64;
        seed = seed.rotate_left(7) ^ folded.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
    ChaCha8Rng::seed_from_u64(seed)
}

/// Square-free decomposition of a monic polynomial: pairs (g, e) with the
/// g square-free, pairwise coprime and f = prod g^e.
fn squarefree(ctx: &FieldCtx, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.sqrt(ctx).expect("zero derivative means f is a square");
        for (g, e) in squarefree(ctx, &root) {
            out.push((g, 2 * e));
        }
        return out;
    }
    let mut c = Poly::gcd(ctx, f, &df);
    let mut w = f.div_exact(ctx, &c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = Poly::gcd(ctx, &w, &c);
        let z = w.div_exact(ctx, &y).unwrap();
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(ctx, &w).unwrap();
    }
    if c.deg() > 0 {
        let root = c.sqrt(ctx).expect("remaining cofactor is a square");
        for (g, e) in squarefree(ctx, &root) {
            out.push((g, 2 * e));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree: pairs (product, degree).
fn distinct_degree(ctx: &FieldCtx, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = Poly::x();
    let mut d = 1;
    while rest.deg() >= 2 * d as isize {
        h = h.frobenius_mod(ctx, ctx.m(), &rest);
        let g = Poly::gcd(ctx, &h.add(&Poly::x()), &rest);
        if !g.is_one() {
            rest = rest.div_exact(ctx, &g).unwrap();
            h = h.rem(ctx, &rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let n = rest.degree().unwrap();
        out.push((rest, n));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d`.
fn equal_degree(ctx: &FieldCtx, f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let mask = ctx.order() - 1;
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| Fq(rng.gen::<u128>() & mask)).collect());
        if a.deg() < 1 {
            continue;
        }
        // trace from the residue fields F_{2^{md}} down to F_2
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..ctx.m() as usize * d {
            t = t.square(ctx).rem(ctx, f).unwrap();
            acc = acc.add(&t);
        }
        let g = Poly::gcd(ctx, &acc, f);
        if g.deg() > 0 && g.deg() < n as isize {
            let h = f.div_exact(ctx, &g).unwrap();
            equal_degree(ctx, &g, d, rng, out);
            equal_degree(ctx, &h, d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by the canonical
/// polynomial order. The leading coefficient of `f` is dropped.
pub fn factor(ctx: &FieldCtx, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let f = f.monic(ctx);
    let mut rng = rng_for(&f);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, e) in squarefree(ctx, &f) {
        for (h, d) in distinct_degree(ctx, &g) {
            let mut parts = Vec::new();
            equal_degree(ctx, &h, d, &mut rng, &mut parts);
            for p in parts {
                match out.iter_mut().find(|(q, _)| *q == p) {
                    Some(slot) => slot.1 += e,
                    None => out.push((p, e)),
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn is_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
    match factor(ctx, f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1 && f.deg() > 0,
        Err(_) => false,
    }
}

/// Distinct roots of `f` in the field, in increasing order.
pub fn roots(ctx: &FieldCtx, f: &Poly) -> Vec<Fq> {
    if f.deg() <= 0 {
        return Vec::new();
    }
    let f = f.monic(ctx);
    // gcd with x^q - x keeps exactly the linear factors
    let xq = Poly::x().frobenius_mod(ctx, ctx.m(), &f);
    let g = Poly::gcd(ctx, &xq.add(&Poly::x()), &f);
    if g.deg() <= 0 {
        return Vec::new();
    }
    let mut rng = rng_for(&g);
    let mut parts = Vec::new();
    equal_degree(ctx, &g, 1, &mut rng, &mut parts);
    let mut r: Vec<Fq> = parts.iter().map(|p| p.coeff(0)).collect();
    r.sort_unstable();
    r
}
