//! Twists: the hyperelliptic twisting action of H = k/AS(k), its isotropy
//! groups, and the complete twist family of a curve with explicit
//! isomorphisms over extension fields.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq, LinearizedPoly};
use crate::invariants::{curve_from_j, geo_aut_class, j_invariant, GeoAutClass};
use crate::models::{canonicalize, gamma_act, group, kernel_delta, CurveCtx, NormalModel};
use crate::polyrat::{as_reduce, factor, ExtField, Family, Mobius, Poly, RatFn};

/// The curve y^2 + y = u(x) + d.
pub fn hyperelliptic_twist(cc: &CurveCtx, m: &NormalModel, d: Fq) -> NormalModel {
    let ctx = cc.field();
    NormalModel { d: ctx.as_class(ctx.add(m.d, d)), ..*m }
}

/// The isotropy group H_C of C under hyperelliptic twisting, as a subgroup
/// of k/AS(k) given by its nonzero canonical classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HIsotropy {
    pub generators: Vec<Fq>,
}

impl HIsotropy {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// |k/(H_C + AS(k))| representatives: the classes d giving distinct
    /// hyperelliptic twists.
    pub fn twist_classes(&self, cc: &CurveCtx) -> Vec<Fq> {
        if self.is_trivial() {
            vec![Fq::ZERO, cc.r0()]
        } else {
            vec![Fq::ZERO]
        }
    }
}

fn nontrivial_class(cc: &CurveCtx, x: Fq) -> HIsotropy {
    let c = cc.field().as_class(x);
    HIsotropy { generators: if c.is_zero() { vec![] } else { vec![c] } }
}

pub fn isotropy_h(cc: &CurveCtx, m: &NormalModel) -> Result<HIsotropy> {
    let ctx = cc.field();
    let trivial = HIsotropy { generators: vec![] };
    let not_as = |x: Fq| ctx.trace(x) == 1;
    Ok(match m.family {
        Family::Five => {
            let dd = kernel_delta(cc, m.a, m.b, m.c)?;
            HIsotropy { generators: dd.image().into_iter().filter(|x| !x.is_zero()).collect() }
        }
        Family::Split111 => {
            let (a, b, c) = (m.a, m.b, m.c);
            let third = if a == b {
                Some(c)
            } else if b == c {
                Some(a)
            } else if a == c {
                Some(b)
            } else {
                None
            };
            match third {
                Some(t) if not_as(t) => nontrivial_class(cc, t),
                _ => trivial,
            }
        }
        Family::Quad111 if m.b.is_zero() && not_as(m.a) => nontrivial_class(cc, m.a),
        _ => trivial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMember {
    /// Canonical form of the twist.
    pub model: NormalModel,
    /// The model as parameterized for its class, before canonicalization.
    pub source: NormalModel,
    /// Coordinates in the class's quotient sets.
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct TwistFamily {
    pub class: GeoAutClass,
    /// The model every member is compared with over an extension.
    pub representative: NormalModel,
    pub base: NormalModel,
    pub members: Vec<TwistMember>,
}

/// Coset representatives of k/L(k) for an additive polynomial L.
fn quotient_reps(ctx: &FieldCtx, l: &LinearizedPoly) -> Vec<Fq> {
    ctx.coset_reps(&l.image(ctx))
}

/// d-classes for the final hyperelliptic layer: k/(H + AS(k)).
fn d_classes(cc: &CurveCtx, m: &NormalModel) -> Result<Vec<Fq>> {
    Ok(isotropy_h(cc, m)?.twist_classes(cc))
}

/// Every twist of `base` up to k-isomorphism.
pub fn twist_family(cc: &CurveCtx, base: &NormalModel) -> Result<TwistFamily> {
    let ctx = cc.field();
    let j = j_invariant(cc, base);
    let class = geo_aut_class(ctx, &j);
    let z = Fq::ZERO;
    let mut rep = curve_from_j(cc, &j)?;
    let mut sources: Vec<(NormalModel, String)> = Vec::new();
    match class {
        GeoAutClass::C2 => {
            for d in [z, cc.r0()] {
                sources.push((hyperelliptic_twist(cc, &rep, d), format!("d={d}")));
            }
        }
        GeoAutClass::C2xC2 | GeoAutClass::C2xS3 => {
            // y^2 + y = ax + c/(x^2+x+r) + d, r in k/AS(k), with r = 0 the
            // split model ax + c/x + c/(x+1)
            let a = j.j3;
            let c = if class == GeoAutClass::C2xC2 { ctx.sqrt(j.j2) } else { a };
            let split = NormalModel::new(cc, Family::Split111, a, c, c, z)?;
            rep = split;
            for d in d_classes(cc, &split)? {
                sources.push((hyperelliptic_twist(cc, &split, d), format!("d={d},r=0")));
                let quad = NormalModel::new(cc, Family::Quad111, a, z, c, d)?;
                sources.push((quad, format!("d={d},r={}", cc.r0())));
            }
            if class == GeoAutClass::C2xS3 {
                let s = cc.s0();
                let as_ = ctx.mul(a, s);
                let cubic_c = ctx.mul(as_, ctx.add(s, Fq::ONE));
                for d in [z, cc.r0()] {
                    let cubic = NormalModel::new(cc, Family::Cubic111, as_, as_, cubic_c, d)?;
                    sources.push((cubic, format!("d={d},s={s}")));
                }
            }
        }
        GeoAutClass::M32 => {
            // y^2 + y = ax^5 + bx^4 + ax^3 + d, b in k/E(k)
            let a = ctx.sqrt(j.j3);
            rep = NormalModel::new(cc, Family::Five, a, z, a, z)?;
            for b in quotient_reps(ctx, &LinearizedPoly::e_ac(ctx, a, a)) {
                let m = NormalModel::new(cc, Family::Five, a, b, a, z)?;
                for d in d_classes(cc, &m)? {
                    sources.push((hyperelliptic_twist(cc, &m, d), format!("b={b},d={d}")));
                }
            }
        }
        GeoAutClass::M160 => {
            // y^2 + y = ax^5 + bx^4 + d, a in k*/(k*)^5, b in
            // (k/E_a(k))/mu_5(k)
            rep = NormalModel::new(cc, Family::Five, Fq::ONE, z, z, z)?;
            for &a in cc.fifth_power_reps() {
                let image = LinearizedPoly::e_ac(ctx, a, z).image(ctx);
                for b in ctx.coset_reps(&image) {
                    let orbit_min =
                        cc.mu5().iter().map(|&l| image.reduce(ctx.mul(l, b))).min().unwrap();
                    if orbit_min != b {
                        continue;
                    }
                    let m = NormalModel::new(cc, Family::Five, a, b, z, z)?;
                    for d in d_classes(cc, &m)? {
                        sources.push((
                            hyperelliptic_twist(cc, &m, d),
                            format!("a={a},b={b},d={d}"),
                        ));
                    }
                }
            }
        }
    }
    let mut members: Vec<TwistMember> = sources
        .into_iter()
        .map(|(source, label)| TwistMember { model: canonicalize(cc, &source), source, label })
        .collect();
    members.sort_by(|x, y| x.model.cmp(&y.model));
    Ok(TwistFamily { class, representative: rep, base: *base, members })
}

/// An isomorphism (x, y) -> (gamma(x), y + v(x)) defined over an extension
/// of k, taking the curve with function `from` to the one with `to`:
/// from + v + v^2 = to o gamma.
#[derive(Clone, Debug)]
pub struct TwistWitness {
    pub ext: ExtField,
    pub gamma: Mobius,
    pub v: RatFn,
    /// The auxiliary elements (theta, beta, lambda) in the big field. Those
    /// joining the base curve to the class representative carry a `base.`
    /// prefix.
    pub params: Vec<(String, Fq)>,
}

impl TwistWitness {
    /// Degree of the field of definition over k.
    pub fn degree(&self) -> u32 {
        self.ext.degree()
    }

    pub fn verify(&self, cc: &CurveCtx, from: &NormalModel, to: &NormalModel) -> bool {
        let big = self.ext.big();
        let uf = self.ext.embed_ratfn(&from.u(cc));
        let ut = self.ext.embed_ratfn(&to.u(cc));
        uf.add_as(big, &self.v) == ut.pullback(big, &self.gamma)
    }
}

/// Solves from + v + v^2 = to o gamma for v, when possible.
fn complete(ctx: &FieldCtx, from: &RatFn, to: &RatFn, g: &Mobius) -> Option<RatFn> {
    let w = to.pullback(ctx, g).add(ctx, from);
    let (rest, v0) = as_reduce(ctx, &w);
    let (t, _) = ctx.solve_artin_schreier(rest.as_constant()?)?;
    Some(v0.add_const(ctx, t))
}

struct Leg {
    gamma: Mobius,
    v: RatFn,
    params: Vec<(&'static str, Fq)>,
}

fn compose(big: &FieldCtx, first: &Leg, second: &Leg) -> Leg {
    let gamma = second.gamma.compose(big, &first.gamma);
    let v = first.v.add(big, &second.v.pullback(big, &first.gamma));
    let mut params = first.params.clone();
    params.extend(second.params.iter().cloned());
    Leg { gamma, v, params }
}

fn invert(big: &FieldCtx, leg: &Leg) -> Leg {
    let gi = leg.gamma.inverse(big);
    Leg { gamma: gi, v: leg.v.pullback(big, &gi), params: leg.params.clone() }
}

/// A k-isomorphism from `from` to `to`, two members of one Γ-orbit.
fn rational_leg(cc: &CurveCtx, from: &NormalModel, to: &NormalModel) -> Result<Leg> {
    let ctx = cc.field();
    let g = group(cc, from.family)
        .into_iter()
        .find(|g| gamma_act(cc, to, g).map(|m| m == *from).unwrap_or(false))
        .ok_or_else(|| Error::InvalidInput("models are not k-isomorphic".into()))?;
    let gamma = g.to_mobius(cc);
    let v = complete(ctx, &from.u(cc), &to.u(cc), &gamma)
        .ok_or_else(|| Error::Internal("Γ-element does not lift".into()))?;
    Ok(Leg { gamma, v, params: vec![] })
}

fn embed_leg(ext: &ExtField, leg: &Leg) -> Leg {
    Leg {
        gamma: leg.gamma.map_embedding(|c| ext.embed(c)),
        v: ext.embed_ratfn(&leg.v),
        params: leg.params.clone(),
    }
}

/// Polynomials whose roots the isomorphism from `source` to the class
/// representative is built from.
fn leg_polys(cc: &CurveCtx, class: GeoAutClass, source: &NormalModel) -> Vec<Poly> {
    let ctx = cc.field();
    match (class, source.family) {
        (GeoAutClass::C2, _) => vec![],
        (_, Family::Split111) => vec![],
        (_, Family::Quad111) => vec![cc.quad_den()],
        (_, Family::Cubic111) => vec![cc.cubic_den()],
        (GeoAutClass::M32, _) => {
            let (a, b) = (source.a, source.b);
            let a4 = ctx.pow(a, 4);
            let mut c = vec![Fq::ZERO; 17];
            c[0] = b;
            c[1] = a;
            c[2] = ctx.square(a);
            c[8] = a4;
            c[16] = a4;
            vec![Poly::from_coeffs(c)]
        }
        (_, _) => {
            let (a, b) = (source.a, source.b);
            let mut lam = vec![Fq::ZERO; 6];
            lam[0] = a;
            lam[5] = Fq::ONE;
            let mut e = vec![Fq::ZERO; 17];
            e[0] = b;
            e[1] = a;
            e[16] = ctx.pow(a, 4);
            vec![Poly::from_coeffs(lam), Poly::from_coeffs(e)]
        }
    }
}

/// Isomorphisms from `source` to the representative over `ext`, for every
/// choice of roots, until one completes.
fn source_leg(
    cc: &CurveCtx,
    ext: &ExtField,
    class: GeoAutClass,
    source: &NormalModel,
    rep: &NormalModel,
) -> Option<Leg> {
    let big = ext.big();
    let from = ext.embed_ratfn(&source.u(cc));
    let to = ext.embed_ratfn(&rep.u(cc));
    let polys = leg_polys(cc, class, source);
    let roots: Vec<Vec<Fq>> = polys.iter().map(|p| ext.roots_in_big(p)).collect();
    if roots.iter().any(|r| r.is_empty()) {
        return None;
    }
    let one = Fq::ONE;
    let mob = |a, b, c, d| Mobius::new(big, a, b, c, d).ok();
    let mut candidates: Vec<(Mobius, Vec<(&'static str, Fq)>)> = Vec::new();
    match (polys.len(), source.family) {
        (0, _) => candidates.push((Mobius::identity(), vec![])),
        (_, Family::Quad111) => {
            for &t in &roots[0] {
                candidates.extend(mob(one, t, Fq::ZERO, one).map(|g| (g, vec![("theta", t)])));
            }
        }
        (_, Family::Cubic111) => {
            // x -> theta(x + theta)/(theta'(x + theta'))
            for &t in &roots[0] {
                for &t2 in &roots[0] {
                    if t != t2 {
                        let g = mob(t, big.square(t), t2, big.square(t2));
                        candidates.extend(g.map(|g| (g, vec![("theta", t), ("theta'", t2)])));
                    }
                }
            }
        }
        (1, _) => {
            for &b in &roots[0] {
                candidates.extend(mob(one, b, Fq::ZERO, one).map(|g| (g, vec![("beta", b)])));
            }
        }
        _ => {
            // x -> lambda (x + beta)
            for &l in &roots[0] {
                for &b in &roots[1] {
                    let g = mob(l, big.mul(l, b), Fq::ZERO, one);
                    candidates.extend(g.map(|g| (g, vec![("lambda", l), ("beta", b)])));
                }
            }
        }
    }
    candidates.into_iter().find_map(|(gamma, params)| {
        complete(big, &from, &to, &gamma).map(|v| Leg { gamma, v, params })
    })
}

/// Whether every polynomial has an irreducible factor of degree dividing d.
fn roots_possible(ctx: &FieldCtx, polys: &[Poly], d: u32) -> Result<bool> {
    for p in polys {
        let f = factor::factor(ctx, p)?;
        if !f.iter().any(|(g, _)| d as usize % g.degree().unwrap() == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The least extension degree over which `source` becomes isomorphic to
/// the representative.
fn minimal_degree(cc: &CurveCtx, class: GeoAutClass, source: &NormalModel, rep: &NormalModel) -> Result<u32> {
    let ctx = cc.field();
    let polys = leg_polys(cc, class, source);
    for d in 1..=127 / ctx.m() {
        if !roots_possible(ctx, &polys, d)? {
            continue;
        }
        let ext = ExtField::new(ctx, d)?;
        if source_leg(cc, &ext, class, source, rep).is_some() {
            return Ok(d);
        }
    }
    Err(Error::InvalidInput(format!(
        "no isomorphism over an extension of degree at most {}",
        127 / ctx.m()
    )))
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// The family member k-isomorphic to `m`.
fn member_of<'a>(cc: &CurveCtx, fam: &'a TwistFamily, m: &NormalModel) -> Result<&'a TwistMember> {
    let canon = canonicalize(cc, m);
    fam.members
        .iter()
        .find(|t| t.model == canon)
        .ok_or_else(|| Error::InvalidInput(format!("{m:?} is not a twist of the base curve")))
}

/// An isomorphism from `member` to `base`, verified by substitution. It is
/// defined over k when the two are k-isomorphic and otherwise over the
/// compositum of the least fields joining each of them to the class
/// representative.
pub fn twist_witness(cc: &CurveCtx, base: &NormalModel, member: &NormalModel) -> Result<TwistWitness> {
    let ctx = cc.field();
    let fam = twist_family(cc, base)?;
    let rep = fam.representative;
    let tm = member_of(cc, &fam, member)?;
    let tb = member_of(cc, &fam, base)?;
    if tm == tb {
        let ext = ExtField::new(ctx, 1)?;
        let leg = rational_leg(cc, member, base)?;
        return Ok(TwistWitness { ext, gamma: leg.gamma, v: leg.v, params: vec![] });
    }
    let d1 = minimal_degree(cc, fam.class, &tm.source, &rep)?;
    let d2 = minimal_degree(cc, fam.class, &tb.source, &rep)?;
    let d = lcm(d1, d2);
    if d * ctx.m() > 127 {
        return Err(Error::InvalidInput(format!("witness field of degree {d} is too large")));
    }
    let ext = ExtField::new(ctx, d)?;
    let big = ext.big();
    let missing = || Error::Internal("no isomorphism over the compositum".into());
    // member -> source -> rep <- source_b <- base
    let m_src = embed_leg(&ext, &rational_leg(cc, member, &tm.source)?);
    let src_rep = source_leg(cc, &ext, fam.class, &tm.source, &rep).ok_or_else(missing)?;
    let b_src = embed_leg(&ext, &rational_leg(cc, base, &tb.source)?);
    let bsrc_rep = source_leg(cc, &ext, fam.class, &tb.source, &rep).ok_or_else(missing)?;
    let to_rep = compose(big, &m_src, &src_rep);
    let base_to_rep = compose(big, &b_src, &bsrc_rep);
    let leg = compose(big, &to_rep, &invert(big, &base_to_rep));
    let params = src_rep
        .params
        .iter()
        .map(|&(k, v)| (k.to_string(), v))
        .chain(bsrc_rep.params.iter().map(|&(k, v)| (format!("base.{k}"), v)))
        .collect();
    let w = TwistWitness { ext, gamma: leg.gamma, v: leg.v, params };
    if !w.verify(cc, member, base) {
        return Err(Error::Internal("twist witness does not verify".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::is_canonical;
    use std::collections::BTreeSet;

    fn census(cc: &CurveCtx) -> Vec<NormalModel> {
        let ctx = cc.field();
        let mut out = Vec::new();
        for f in Family::ALL {
            for a in ctx.elements() {
                for b in ctx.elements() {
                    for c in ctx.elements() {
                        for d in [Fq::ZERO, cc.r0()] {
                            if let Ok(m) = NormalModel::new(cc, f, a, b, c, d) {
                                if is_canonical(cc, &m) {
                                    out.push(m);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn twisting_is_an_involution() {
        let cc = CurveCtx::from_m(2).unwrap();
        let m = NormalModel::new(&cc, Family::Five, Fq(1), Fq(2), Fq(3), Fq::ZERO).unwrap();
        let t = hyperelliptic_twist(&cc, &m, cc.r0());
        assert_eq!(hyperelliptic_twist(&cc, &t, cc.r0()), m);
        assert_eq!(hyperelliptic_twist(&cc, &m, Fq::ZERO), m);
    }

    #[test]
    fn h_isotropy_matches_collision_scan() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            for c in census(&cc) {
                let twisted = hyperelliptic_twist(&cc, &c, cc.r0());
                let collides = canonicalize(&cc, &twisted) == c;
                assert_eq!(!isotropy_h(&cc, &c).unwrap().is_trivial(), collides, "{c:?}");
            }
        }
    }

    #[test]
    fn h_isotropy_examples() {
        let cc = CurveCtx::from_m(2).unwrap();
        let ctx = cc.field();
        let o = NormalModel::new(&cc, Family::OneThree, Fq(1), Fq(1), Fq(1), Fq::ZERO).unwrap();
        assert!(isotropy_h(&cc, &o).unwrap().is_trivial());
        let a = ctx.elements().find(|&x| ctx.trace(x) == 1).unwrap();
        let q = NormalModel::new(&cc, Family::Quad111, a, Fq::ZERO, Fq(1), Fq::ZERO).unwrap();
        assert_eq!(isotropy_h(&cc, &q).unwrap().generators, vec![cc.r0()]);
    }

    #[test]
    fn families_partition_the_census() {
        for m in 1..=3 {
            let cc = CurveCtx::from_m(m).unwrap();
            let all: BTreeSet<NormalModel> = census(&cc).into_iter().collect();
            let mut seen = BTreeSet::new();
            let mut js = BTreeSet::new();
            for c in &all {
                let j = j_invariant(&cc, c);
                if !js.insert(j) {
                    continue;
                }
                let fam = twist_family(&cc, c).unwrap();
                let models: BTreeSet<NormalModel> = fam.members.iter().map(|t| t.model).collect();
                assert_eq!(models.len(), fam.members.len(), "duplicate twists for {j}");
                for t in &fam.members {
                    assert_eq!(j_invariant(&cc, &t.model), j);
                    assert!(seen.insert(t.model));
                }
            }
            assert_eq!(seen, all);
        }
    }

    #[test]
    fn class_sizes() {
        // C2 twists come in pairs, M160 has 3 + [2]_{2|m} + [8]_{4|m}
        for m in 1..=4 {
            let cc = CurveCtx::from_m(m).unwrap();
            let z = Fq::ZERO;
            let x5 = NormalModel::new(&cc, Family::Five, Fq::ONE, z, z, z).unwrap();
            let expected = 3 + if m % 2 == 0 { 2 } else { 0 } + if m % 4 == 0 { 8 } else { 0 };
            assert_eq!(twist_family(&cc, &x5).unwrap().members.len(), expected);
            let g = NormalModel::new(&cc, Family::OneThree, Fq(1), Fq(1), Fq(1), z).unwrap();
            assert_eq!(twist_family(&cc, &g).unwrap().members.len(), 2);
        }
    }

    #[test]
    fn m160_over_odd_degree_field() {
        let cc = CurveCtx::from_m(3).unwrap();
        let z = Fq::ZERO;
        let x5 = NormalModel::new(&cc, Family::Five, Fq::ONE, z, z, z).unwrap();
        let fam = twist_family(&cc, &x5).unwrap();
        let expect: BTreeSet<NormalModel> = [(z, z), (Fq::ONE, z), (Fq::ONE, Fq::ONE)]
            .iter()
            .map(|&(b, d)| canonicalize(&cc, &NormalModel::new(&cc, Family::Five, Fq::ONE, b, z, d).unwrap()))
            .collect();
        let got: BTreeSet<NormalModel> = fam.members.iter().map(|t| t.model).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn witnesses_verify_for_every_member() {
        for m in 1..=2 {
            let cc = CurveCtx::from_m(m).unwrap();
            let mut js = BTreeSet::new();
            for c in census(&cc) {
                if !js.insert(j_invariant(&cc, &c)) {
                    continue;
                }
                let fam = twist_family(&cc, &c).unwrap();
                for t in &fam.members {
                    let w = twist_witness(&cc, &c, &t.model).unwrap();
                    assert!(w.verify(&cc, &t.model, &c));
                    if t.model == canonicalize(&cc, &c) {
                        assert_eq!(w.degree(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_between_two_twists() {
        let cc = CurveCtx::from_m(2).unwrap();
        let z = Fq::ZERO;
        let x5 = NormalModel::new(&cc, Family::Five, Fq::ONE, z, z, z).unwrap();
        let fam = twist_family(&cc, &x5).unwrap();
        let (m1, m2) = (fam.members[1].model, fam.members[3].model);
        let w = twist_witness(&cc, &m1, &m2).unwrap();
        assert!(w.verify(&cc, &m2, &m1));
    }

    #[test]
    fn quadratic_shift_matches_explicit_isomorphism() {
        // (x, y) -> (x + theta, y + v) with theta^2 + theta = r, v^2 + v = a theta
        let cc = CurveCtx::from_m(2).unwrap();
        let (a, c) = (Fq(2), Fq(3));
        let rep = NormalModel::new(&cc, Family::Split111, a, c, c, Fq::ZERO).unwrap();
        let src = NormalModel::new(&cc, Family::Quad111, a, Fq::ZERO, c, Fq::ZERO).unwrap();
        let d = minimal_degree(&cc, GeoAutClass::C2xC2, &src, &rep).unwrap();
        assert!(d == 2 || d == 4);
        let ext = ExtField::new(cc.field(), d).unwrap();
        let big = ext.big();
        let leg = source_leg(&cc, &ext, GeoAutClass::C2xC2, &src, &rep).unwrap();
        let theta = leg.params[0].1;
        assert_eq!(big.add(theta, big.square(theta)), ext.embed(cc.r0()));
        let v = leg.v.as_constant().unwrap();
        assert_eq!(big.add(v, big.square(v)), big.mul(ext.embed(a), theta));
    }

    #[test]
    fn m32_shift_matches_explicit_isomorphism() {
        // t1 = a beta^2 (1 + beta^2), t2 = sqrt(a beta + b)
        for m in 1..=2 {
            let cc = CurveCtx::from_m(m).unwrap();
            let ctx = cc.field();
            for a in ctx.nonzero_elements() {
                let rep = NormalModel::new(&cc, Family::Five, a, Fq::ZERO, a, Fq::ZERO).unwrap();
                for b in quotient_reps(ctx, &LinearizedPoly::e_ac(ctx, a, a)) {
                    let src = NormalModel::new(&cc, Family::Five, a, b, a, Fq::ZERO).unwrap();
                    let d = minimal_degree(&cc, GeoAutClass::M32, &src, &rep).unwrap();
                    let ext = ExtField::new(ctx, d).unwrap();
                    let big = ext.big();
                    let leg = source_leg(&cc, &ext, GeoAutClass::M32, &src, &rep).unwrap();
                    let beta = leg.params[0].1;
                    let (ae, be) = (ext.embed(a), ext.embed(b));
                    let b2 = big.square(beta);
                    let t1 = big.mul(big.mul(ae, b2), big.add(Fq::ONE, b2));
                    let t2 = big.sqrt(big.add(big.mul(ae, beta), be));
                    assert!(leg.v.is_polynomial());
                    assert_eq!(leg.v.num().coeff(1), t1);
                    assert_eq!(leg.v.num().coeff(2), t2);
                }
            }
        }
    }

    #[test]
    fn m160_scaling_matches_explicit_isomorphism() {
        // t1 = a beta^4, t2 = a^2 beta^8
        let cc = CurveCtx::from_m(4).unwrap();
        let fam = twist_family(&cc, &NormalModel::new(&cc, Family::Five, Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ZERO).unwrap()).unwrap();
        assert_eq!(fam.members.len(), 13);
        for t in fam.members.iter().filter(|t| t.source.d.is_zero()) {
            let src = t.source;
            let d = minimal_degree(&cc, GeoAutClass::M160, &src, &fam.representative).unwrap();
            let ext = ExtField::new(cc.field(), d).unwrap();
            let big = ext.big();
            let leg = source_leg(&cc, &ext, GeoAutClass::M160, &src, &fam.representative).unwrap();
            let (l, beta) = (leg.params[0].1, leg.params[1].1);
            let ae = ext.embed(src.a);
            assert_eq!(big.pow(l, 5), ae);
            assert_eq!(leg.v.num().coeff(1), big.mul(ae, big.pow(beta, 4)));
            assert_eq!(leg.v.num().coeff(2), big.mul(big.square(ae), big.pow(beta, 8)));
        }
    }
}
