//! F_2-linear algebra on field elements viewed as bit vectors in the
//! polynomial basis.

use super::{FieldCtx, Fq};

fn pivot(v: u128) -> u32 {
    127 - v.leading_zeros()
}

/// A subspace of k viewed as an F_2-vector space, kept as a fully reduced
/// echelon basis (pivot = highest set bit, pivots strictly decreasing, and
/// no basis vector has a bit set at another vector's pivot).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct F2Subspace {
    basis: Vec<u128>,
}

impl F2Subspace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn span<I: IntoIterator<Item = Fq>>(vectors: I) -> Self {
        let mut s = Self::zero();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// The whole of k.
    pub fn full(ctx: &FieldCtx) -> Self {
        Self::span((0..ctx.m()).map(|i| Fq(1 << i)))
    }

    /// Adds a vector; returns false when it was already in the span.
    pub fn insert(&mut self, v: Fq) -> bool {
        let v = self.reduce(v).0;
        if v == 0 {
            return false;
        }
        let p = pivot(v);
        for b in &mut self.basis {
            if *b >> p & 1 == 1 {
                *b ^= v;
            }
        }
        let at = self.basis.partition_point(|&b| pivot(b) > p);
        self.basis.insert(at, v);
        true
    }

    /// The smallest element (as an integer) of the coset `v + self`.
    pub fn reduce(&self, v: Fq) -> Fq {
        let mut x = v.0;
        for &b in &self.basis {
            if x >> pivot(b) & 1 == 1 {
                x ^= b;
            }
        }
        Fq(x)
    }

    pub fn contains(&self, v: Fq) -> bool {
        self.reduce(v).0 == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = Fq> + '_ {
        self.basis.iter().map(|&b| Fq(b))
    }

    /// Every element of the subspace, in increasing order.
    pub fn elements(&self) -> Vec<Fq> {
        let mut out = vec![0u128];
        for &b in &self.basis {
            let n = out.len();
            for i in 0..n {
                out.push(out[i] ^ b);
            }
        }
        out.sort_unstable();
        out.into_iter().map(Fq).collect()
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &F2Subspace) -> F2Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(v);
        }
        s
    }

    /// One representative per coset of `self` in k: the minimal element of
    /// each coset, listed in increasing order.
    pub fn coset_reps(&self, ctx: &FieldCtx) -> Vec<Fq> {
        let pivots: u128 = self.basis.iter().map(|&b| 1u128 << pivot(b)).sum();
        let free: Vec<u32> = (0..ctx.m()).filter(|&i| pivots >> i & 1 == 0).collect();
        let mut reps: Vec<Fq> = (0u128..1 << free.len())
            .map(|sel| {
                let mut x = 0u128;
                for (j, &bit) in free.iter().enumerate() {
                    if sel >> j & 1 == 1 {
                        x |= 1 << bit;
                    }
                }
                Fq(x)
            })
            .collect();
        reps.sort_unstable();
        reps
    }
}

/// Gaussian elimination for an F_2-linear map k -> k given by the images of
/// the basis vectors t^i.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    // (image, preimage) with image pivots strictly decreasing
    rows: Vec<(u128, u128)>,
    kernel: F2Subspace,
}

impl LinearSolver {
    pub fn new(ctx: &FieldCtx, map: impl Fn(Fq) -> Fq) -> Self {
        Self::from_images((0..ctx.m()).map(|i| map(Fq(1 << i)).0))
    }

    /// Builds the solver from the images of the unit vectors e_0, e_1, ...
    pub fn from_images(images: impl IntoIterator<Item = u128>) -> Self {
        let mut rows: Vec<(u128, u128)> = Vec::new();
        let mut kernel = F2Subspace::zero();
        for (i, img) in images.into_iter().enumerate() {
            let (mut v, mut pre) = (img, 1u128 << i);
            for &(r, rp) in &rows {
                if v >> pivot(r) & 1 == 1 {
                    v ^= r;
                    pre ^= rp;
                }
            }
            if v == 0 {
                kernel.insert(Fq(pre));
            } else {
                let p = pivot(v);
                let at = rows.partition_point(|&(r, _)| pivot(r) > p);
                rows.insert(at, (v, pre));
            }
        }
        Self { rows, kernel }
    }

    pub fn kernel(&self) -> &F2Subspace {
        &self.kernel
    }

    pub fn image(&self) -> F2Subspace {
        F2Subspace::span(self.rows.iter().map(|&(r, _)| Fq(r)))
    }

    /// Some x with map(x) = y, if one exists.
    pub fn solve(&self, y: Fq) -> Option<Fq> {
        let (mut v, mut pre) = (y.0, 0u128);
        for &(r, rp) in &self.rows {
            if v >> pivot(r) & 1 == 1 {
                v ^= r;
                pre ^= rp;
            }
        }
        (v == 0).then_some(Fq(pre))
    }
}

/// An additive polynomial L(x) = sum c_i x^(2^e_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    pub terms: Vec<(Fq, u32)>,
}

impl LinearizedPoly {
    pub fn new(terms: Vec<(Fq, u32)>) -> Self {
        Self { terms }
    }

    /// a^4 x^16 + c^4 x^8 + c^2 x^2 + a x.
    pub fn e_ac(ctx: &FieldCtx, a: Fq, c: Fq) -> Self {
        Self::new(vec![
            (ctx.pow(a, 4), 4),
            (ctx.pow(c, 4), 3),
            (ctx.square(c), 1),
            (a, 0),
        ])
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Fq) -> Fq {
        self.terms.iter().fold(Fq::ZERO, |acc, &(c, e)| {
            ctx.add(acc, ctx.mul(c, ctx.frobenius(x, e)))
        })
    }

    pub fn solver(&self, ctx: &FieldCtx) -> LinearSolver {
        LinearSolver::new(ctx, |x| self.eval(ctx, x))
    }

    pub fn kernel(&self, ctx: &FieldCtx) -> F2Subspace {
        self.solver(ctx).kernel().clone()
    }

    pub fn image(&self, ctx: &FieldCtx) -> F2Subspace {
        self.solver(ctx).image()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_gives_coset_minimum() {
        let ctx = FieldCtx::new(5).unwrap();
        let s = F2Subspace::span([Fq(0b10110), Fq(0b01101), Fq(0b00111)]);
        let elems = s.elements();
        assert_eq!(elems.len(), 8);
        for x in ctx.elements() {
            let brute = elems.iter().map(|e| Fq(e.0 ^ x.0)).min().unwrap();
            assert_eq!(s.reduce(x), brute);
        }
    }

    #[test]
    fn coset_reps_tile_k() {
        let ctx = FieldCtx::new(4).unwrap();
        let s = F2Subspace::span([Fq(0b1010), Fq(0b0110)]);
        let reps = s.coset_reps(&ctx);
        assert_eq!(reps.len(), 4);
        let mut seen = vec![0u32; 16];
        for &r in &reps {
            for e in s.elements() {
                seen[(r.0 ^ e.0) as usize] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn identity_map_has_trivial_kernel() {
        let ctx = FieldCtx::new(3).unwrap();
        let l = LinearizedPoly::new(vec![(Fq::ONE, 0)]);
        assert_eq!(l.kernel(&ctx).dim(), 0);
    }

    #[test]
    fn e1_kernel_is_f16_over_f16() {
        let ctx = FieldCtx::new(4).unwrap();
        let e1 = LinearizedPoly::e_ac(&ctx, Fq::ONE, Fq::ZERO);
        assert_eq!(e1.kernel(&ctx).dim(), 4);
    }

    #[test]
    fn e_ac_kernel_elements_vanish() {
        let ctx = FieldCtx::new(3).unwrap();
        for a in ctx.nonzero_elements() {
            for c in ctx.elements() {
                let e = LinearizedPoly::e_ac(&ctx, a, c);
                let ker = e.kernel(&ctx);
                assert!(ker.dim() <= 4);
                for nu in ker.elements() {
                    assert_eq!(e.eval(&ctx, nu), Fq::ZERO);
                }
                let brute = ctx.elements().filter(|&x| e.eval(&ctx, x) == Fq::ZERO).count();
                assert_eq!(brute, 1 << ker.dim());
            }
        }
    }

    #[test]
    fn solver_finds_preimages() {
        let ctx = FieldCtx::new(4).unwrap();
        let l = LinearizedPoly::e_ac(&ctx, Fq(3), Fq(5));
        let solver = l.solver(&ctx);
        for x in ctx.elements() {
            let y = l.eval(&ctx, x);
            let z = solver.solve(y).unwrap();
            assert_eq!(l.eval(&ctx, z), y);
        }
    }
}
