//! Text formats for curves, polynomials and j-invariants.
//!
//! A curve is either `family=<name> a=<hex> b=<hex> c=<hex> d=<hex>` with an
//! optional `r=<hex>` (quad111) or `s=<hex>` (cubic111), or a raw model
//! `u=<num>/<den>` whose polynomials are comma-separated hex coefficients,
//! lowest degree first.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::invariants::JInvariant;
use crate::models::{CurveCtx, CurveModel, NormalModel};
use crate::polyrat::{Family, Poly, RatFn};

pub fn format_model(cc: &CurveCtx, m: &NormalModel) -> String {
    let mut s = format!("family={} a={} b={} c={} d={}", m.family, m.a, m.b, m.c, m.d);
    match m.family {
        Family::Quad111 => s += &format!(" r={}", cc.r0()),
        Family::Cubic111 => s += &format!(" s={}", cc.s0()),
        _ => {}
    }
    s
}

pub fn format_curve(cc: &CurveCtx, c: &CurveModel) -> String {
    match c {
        CurveModel::Normal(m) => format_model(cc, m),
        CurveModel::Raw(u) => format!("u={u}"),
    }
}

pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<Poly> {
    let coeffs = s.split(',').map(|c| ctx.parse_elem(c)).collect::<Result<Vec<Fq>>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

pub fn parse_ratfn(ctx: &FieldCtx, s: &str) -> Result<RatFn> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let den = parse_poly(ctx, den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    RatFn::new(ctx, parse_poly(ctx, num)?, den)
}

fn fields(s: &str) -> Result<HashMap<&str, &str>> {
    let mut out = HashMap::new();
    for tok in s.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{tok}'")))?;
        if out.insert(k, v).is_some() {
            return Err(Error::Parse(format!("repeated key '{k}'")));
        }
    }
    Ok(out)
}

pub fn parse_curve(cc: &CurveCtx, s: &str) -> Result<CurveModel> {
    let ctx = cc.field();
    let kv = fields(s)?;
    if let Some(u) = kv.get("u") {
        if kv.len() != 1 {
            return Err(Error::Parse("a raw model takes only u=<num>/<den>".into()));
        }
        return Ok(CurveModel::Raw(parse_ratfn(ctx, u)?));
    }
    let name = kv.get("family").ok_or_else(|| Error::Parse("missing family= or u=".into()))?;
    let family =
        Family::from_name(name).ok_or_else(|| Error::Parse(format!("unknown family '{name}'")))?;
    let get = |k: &str| -> Result<Fq> {
        match kv.get(k) {
            Some(v) => ctx.parse_elem(v),
            None if k == "d" => Ok(Fq::ZERO),
            None => Err(Error::Parse(format!("missing {k}="))),
        }
    };
    for k in kv.keys() {
        let allowed = match family {
            Family::Quad111 => "family a b c d r",
            Family::Cubic111 => "family a b c d s",
            _ => "family a b c d",
        };
        if !allowed.split(' ').any(|x| x == *k) {
            return Err(Error::Parse(format!("unexpected key '{k}' for {family}")));
        }
    }
    for (k, fixed) in [("r", cc.r0()), ("s", cc.s0())] {
        if kv.contains_key(k) && get(k)? != fixed {
            return Err(Error::InvalidInput(format!("{k} must be {fixed} over this field")));
        }
    }
    let m = NormalModel::new(cc, family, get("a")?, get("b")?, get("c")?, get("d")?)?;
    Ok(CurveModel::Normal(m))
}

/// Accepts `j1,j2,j3` or `j=(j1,j2,j3)`.
pub fn parse_j(ctx: &FieldCtx, s: &str) -> Result<JInvariant> {
    let t = s.trim();
    let t = t.strip_prefix("j=").unwrap_or(t);
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let v = t.split(',').map(|c| ctx.parse_elem(c)).collect::<Result<Vec<Fq>>>()?;
    match v[..] {
        [j1, j2, j3] => Ok(JInvariant::new(j1, j2, j3)),
        _ => Err(Error::Parse(format!("expected three coordinates, got '{s}'"))),
    }
}
