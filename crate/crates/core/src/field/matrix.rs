//! Dense linear systems over k.

use super::{FieldCtx, Fq};

/// Solves `rows * x = rhs` for a square system; `None` when singular.
pub fn solve(ctx: &FieldCtx, rows: &[Vec<Fq>], rhs: &[Fq]) -> Option<Vec<Fq>> {
    let n = rows.len();
    let mut a: Vec<Vec<Fq>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.push(b);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = ctx.inv(a[col][col]).ok()?;
        for v in a[col].iter_mut() {
            *v = ctx.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..=n {
                    let t = ctx.mul(f, a[col][c]);
                    a[r][c] = ctx.add(a[r][c], t);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n]).collect())
}
