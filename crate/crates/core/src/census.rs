//! Exhaustive enumeration of k-isomorphism classes and the counting
//! identities they satisfy: orbit counts, Burnside sums, masses and the
//! tallies by geometric automorphism class.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;

use crate::field::Fq;
use crate::invariants::{geo_aut_class, j_invariant, GeoAutClass, JInvariant};
use crate::models::{is_canonical, isotropy, CurveCtx, NormalModel};
use crate::polyrat::Family;

pub type Mass = Ratio<i64>;

/// Every parameter tuple of the family with a given first coordinate.
fn tuples_with_a(cc: &CurveCtx, f: Family, a: Fq) -> impl Iterator<Item = NormalModel> + '_ {
    let ctx = cc.field();
    let ds = [Fq::ZERO, cc.r0()];
    ctx.elements().flat_map(move |b| {
        ctx.elements().flat_map(move |c| {
            ds.into_iter().filter_map(move |d| NormalModel::new(cc, f, a, b, c, d).ok())
        })
    })
}

/// The parameter set 𝒩 of the family.
pub fn parameter_space(cc: &CurveCtx, f: Family) -> impl Iterator<Item = NormalModel> + '_ {
    cc.field().elements().flat_map(move |a| tuples_with_a(cc, f, a))
}

/// Runs `work` on each first coordinate a in k, spread over `jobs`
/// threads, and returns the results in the order of a.
fn par_over_a<T: Send>(cc: &CurveCtx, jobs: usize, work: impl Fn(Fq) -> T + Sync) -> Vec<T> {
    let all: Vec<Fq> = cc.field().elements().collect();
    let jobs = jobs.clamp(1, all.len());
    if jobs == 1 {
        return all.into_iter().map(work).collect();
    }
    let work = &work;
    let mut slots: Vec<Option<T>> = (0..all.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let mine: Vec<(usize, Fq)> =
                    all.iter().copied().enumerate().skip(j).step_by(jobs).collect();
                s.spawn(move || mine.into_iter().map(|(i, a)| (i, work(a))).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            for (i, t) in h.join().expect("census worker panicked") {
                slots[i] = Some(t);
            }
        }
    });
    slots.into_iter().map(Option::unwrap).collect()
}

/// One canonical model per k-isomorphism class of the family, sorted.
pub fn enumerate_family(cc: &CurveCtx, f: Family, jobs: usize) -> Vec<NormalModel> {
    let parts = par_over_a(cc, jobs, |a| {
        tuples_with_a(cc, f, a).filter(|m| is_canonical(cc, m)).collect::<Vec<_>>()
    });
    let mut out: Vec<NormalModel> = parts.into_iter().flatten().collect();
    out.sort_unstable();
    out
}

/// The number of Γ-orbits on 𝒩 as Σ_γ |𝒩_γ| / |Γ_γ| over representatives
/// γ of the conjugacy classes, with each fixed-point set 𝒩_γ described
/// directly rather than found by testing tuples.
pub fn burnside_count(cc: &CurveCtx, f: Family) -> u64 {
    let ctx = cc.field();
    let q = ctx.order() as i64;
    let nz = q - 1;
    let as_nz = ctx.nonzero_elements().filter(|&x| ctx.trace(x) == 0).count() as i64;
    let h = 2; // |k/AS(k)|
    let terms: Vec<(i64, i64)> = match f {
        Family::Split111 => vec![
            (h * nz * nz * nz, 6),
            // tau = 1 + x fixes (a, b, b, d) with a in AS(k) - {0}
            (h * as_nz * nz, 2),
            // sigma = 1/(1 + x) fixes (a, a, a, d)
            (h * nz, 3),
        ],
        Family::Quad111 => vec![
            (h * nz * (q * q - 1), 2),
            // tau fixes (a, 0, c, d) with a in AS(k) - {0}, c != 0
            (h * as_nz * nz, 2),
        ],
        Family::Cubic111 => vec![
            (h * (q * q * q - 1), 3),
            // both rotations fix (a, a, a(1 + s), d)
            (h * nz, 3),
            (h * nz, 3),
        ],
        Family::OneThree => vec![(h * q * nz * nz, nz)],
        Family::Five => {
            let order = q * nz;
            let mut t = vec![(h * nz * q * q, order)];
            // x + 1 fixes a != 0, c with E_ac(1) = 0, b in a + c + AS(k)
            let c_choices = |a: Fq| {
                ctx.elements()
                    .filter(|&c| {
                        let e = ctx.add(ctx.add(ctx.pow(a, 4), a), ctx.add(ctx.pow(c, 4), ctx.square(c)));
                        e.is_zero()
                    })
                    .count() as i64
            };
            let fixed_tau: i64 = ctx.nonzero_elements().map(|a| c_choices(a) * (q / 2) * h).sum();
            t.push((fixed_tau, q));
            // lambda x with lambda in mu_5(k) - {1} fixes (a, 0, 0, d)
            for &l in cc.mu5() {
                if l != Fq::ONE {
                    t.push((h * nz, nz));
                }
            }
            t
        }
    };
    let total: Ratio<i64> = terms.into_iter().map(|(n, c)| Ratio::new(n, c)).sum();
    assert!(total.is_integer(), "Burnside sum {total} is not an integer");
    total.to_integer() as u64
}

/// Σ 1/|Aut_k(C)| over the classes in `classes`, with |Aut_k(C)| = 2|Γ_abcd|.
pub fn mass(cc: &CurveCtx, classes: &[NormalModel]) -> Mass {
    classes.iter().map(|m| Ratio::new(1, 2 * isotropy(cc, m).len() as i64)).sum()
}

fn bracket(cond: bool, v: i64) -> i64 {
    if cond {
        v
    } else {
        0
    }
}

/// Closed-form class count of a family over F_{2^m}.
pub fn family_count_formula(m: u32, f: Family) -> u64 {
    let q = 1i64 << m;
    let n = match f {
        Family::Split111 => q * (q - 1) * (2 * q - 1) / 6,
        Family::Quad111 => (q - 1) * (2 * q * q + q - 4) / 2,
        Family::Cubic111 => (2 * q * q * q + 4 * q - 6) / 3,
        Family::OneThree => 2 * q * (q - 1),
        Family::Five => 4 * q - 2 + bracket(m % 4 == 0, 8),
    };
    n as u64
}

/// Closed-form total number of classes over F_{2^m}.
pub fn total_count_formula(m: u32) -> u64 {
    let q = 1i64 << m;
    (2 * q * q * q + q * q + q - 2 + bracket(m % 4 == 0, 8)) as u64
}

/// Closed-form mass of a family over F_{2^m}.
pub fn family_mass_formula(m: u32, f: Family) -> Mass {
    let q = 1i64 << m;
    match f {
        Family::Split111 => Ratio::new((q - 1).pow(3), 6),
        Family::Quad111 => Ratio::new((q - 1) * (q * q - 1), 2),
        Family::Cubic111 => Ratio::new(q * q * q - 1, 3),
        Family::OneThree => Ratio::from_integer(q * q - q),
        Family::Five => Ratio::from_integer(q),
    }
}

/// Closed-form number of classes with the given geometric automorphism group.
pub fn class_count_formula(m: u32, class: GeoAutClass) -> u64 {
    let q = 1i64 << m;
    let n = match class {
        GeoAutClass::C2 => 2 * (q * q * q - q * q + q - 1),
        GeoAutClass::C2xC2 => (3 * q - 4) * (q - 2),
        GeoAutClass::C2xS3 => 5 * q - 6,
        GeoAutClass::M32 => 4 * q - 5 - bracket(m % 2 == 0, 2),
        GeoAutClass::M160 => 3 + bracket(m % 2 == 0, 2) + bracket(m % 4 == 0, 8),
    };
    n as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: Family,
    pub count: u64,
    pub burnside: u64,
    pub mass: Mass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub m: u32,
    pub q: u64,
    pub families: Vec<FamilyReport>,
    pub classes: Vec<(GeoAutClass, u64)>,
    pub total: u64,
    pub distinct_j: u64,
}

impl CensusReport {
    pub fn total_mass(&self) -> Mass {
        self.families.iter().map(|f| f.mass).sum()
    }

    /// Every disagreement with the closed forms and internal identities.
    pub fn discrepancies(&self) -> Vec<String> {
        let mut out = Vec::new();
        let m = self.m;
        for f in &self.families {
            let want = family_count_formula(m, f.family);
            if f.count != want {
                out.push(format!("{}: count {} but formula gives {want}", f.family, f.count));
            }
            if f.burnside != f.count {
                out.push(format!("{}: Burnside sum {} but {} classes", f.family, f.burnside, f.count));
            }
            let want = family_mass_formula(m, f.family);
            if f.mass != want {
                out.push(format!("{}: mass {} but formula gives {want}", f.family, f.mass));
            }
        }
        for &(c, n) in &self.classes {
            let want = class_count_formula(m, c);
            if n != want {
                out.push(format!("{}: {n} classes but formula gives {want}", c.name()));
            }
        }
        if self.total != total_count_formula(m) {
            out.push(format!("total {} but formula gives {}", self.total, total_count_formula(m)));
        }
        let q3 = (self.q as i64).pow(3);
        if self.total_mass() != Ratio::from_integer(q3) {
            out.push(format!("total mass {} is not q^3 = {q3}", self.total_mass()));
        }
        if self.distinct_j != q3 as u64 {
            out.push(format!("{} distinct j-invariants, expected {q3}", self.distinct_j));
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.discrepancies().is_empty()
    }

    /// Line-delimited `key=value` records.
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("field m={} q={}", self.m, self.q)];
        for f in &self.families {
            out.push(format!(
                "family={} count={} burnside={} mass={}",
                f.family, f.count, f.burnside, f.mass
            ));
        }
        for (c, n) in &self.classes {
            out.push(format!("class={} count={n}", c.name()));
        }
        out.push(format!("total={} mass={} distinct_j={}", self.total, self.total_mass(), self.distinct_j));
        out
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q = {} (m = {})", self.q, self.m)?;
        writeln!(f, "{:<10} {:>10} {:>10} {:>16}", "family", "classes", "burnside", "mass")?;
        for r in &self.families {
            writeln!(f, "{:<10} {:>10} {:>10} {:>16}", r.family.name(), r.count, r.burnside, r.mass.to_string())?;
        }
        writeln!(f, "{:<10} {:>10}", "class", "classes")?;
        for (c, n) in &self.classes {
            writeln!(f, "{:<10} {:>10}", c.name(), n)?;
        }
        writeln!(f, "total {} classes, mass {}, {} distinct j", self.total, self.total_mass(), self.distinct_j)
    }
}

/// The whole census over the context's field.
pub fn full_census(cc: &CurveCtx, jobs: usize) -> CensusReport {
    let ctx = cc.field();
    let mut families = Vec::new();
    let mut class_counts = vec![0u64; GeoAutClass::ALL.len()];
    let mut js: HashSet<JInvariant> = HashSet::new();
    let mut total = 0;
    for f in Family::ALL {
        let members = enumerate_family(cc, f, jobs);
        for m in &members {
            let j = j_invariant(cc, m);
            let c = geo_aut_class(ctx, &j);
            class_counts[GeoAutClass::ALL.iter().position(|&x| x == c).unwrap()] += 1;
            js.insert(j);
        }
        let masses = par_over_a(cc, jobs, |a| {
            let part: Vec<NormalModel> = members.iter().filter(|m| m.a == a).copied().collect();
            mass(cc, &part)
        });
        total += members.len() as u64;
        families.push(FamilyReport {
            family: f,
            count: members.len() as u64,
            burnside: burnside_count(cc, f),
            mass: masses.into_iter().sum(),
        });
    }
    CensusReport {
        m: ctx.m(),
        q: ctx.order() as u64,
        families,
        classes: GeoAutClass::ALL.iter().copied().zip(class_counts).collect(),
        total,
        distinct_j: js.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gamma_act, group};

    /// (1/|Γ|) Σ_γ |𝒩_γ| with each 𝒩_γ found by testing every tuple.
    fn brute_burnside(cc: &CurveCtx, f: Family) -> u64 {
        let g = group(cc, f);
        let fixed: usize = parameter_space(cc, f)
            .map(|m| g.iter().filter(|x| gamma_act(cc, &m, x).unwrap() == m).count())
            .sum();
        assert_eq!(fixed % g.len(), 0);
        (fixed / g.len()) as u64
    }

    #[test]
    fn small_censuses_match_the_tables() {
        let expect = [(1, [1, 3, 6, 4, 6]), (2, [14, 48, 46, 24, 14])];
        for (m, counts) in expect {
            let cc = CurveCtx::from_m(m).unwrap();
            for (f, n) in Family::ALL.into_iter().zip(counts) {
                assert_eq!(enumerate_family(&cc, f, 2).len(), n, "{f} at m={m}");
                assert_eq!(family_count_formula(m, f), n as u64);
            }
        }
    }

    #[test]
    fn described_fixed_points_agree_with_testing() {
        for m in 1..=4 {
            let cc = CurveCtx::from_m(m).unwrap();
            for f in Family::ALL {
                assert_eq!(burnside_count(&cc, f), brute_burnside(&cc, f), "{f} at m={m}");
            }
        }
    }

    #[test]
    fn threads_do_not_change_results() {
        let cc = CurveCtx::from_m(3).unwrap();
        for f in Family::ALL {
            assert_eq!(enumerate_family(&cc, f, 1), enumerate_family(&cc, f, 5));
        }
    }

    #[test]
    fn q2_report() {
        let cc = CurveCtx::from_m(1).unwrap();
        let r = full_census(&cc, 1);
        assert_eq!(r.total, 20);
        let tallies: Vec<u64> = r.classes.iter().map(|c| c.1).collect();
        assert_eq!(tallies, vec![10, 0, 4, 3, 3]);
        assert_eq!(r.total_mass(), Ratio::from_integer(8));
        let masses: Vec<Mass> = r.families.iter().map(|f| f.mass).collect();
        assert_eq!(
            masses,
            vec![Ratio::new(1, 6), Ratio::new(3, 2), Ratio::new(7, 3), Ratio::from_integer(2), Ratio::from_integer(2)]
        );
        assert!(r.is_consistent(), "{:?}", r.discrepancies());
    }

    #[test]
    fn q4_and_q8_reports_are_consistent() {
        for m in 2..=3 {
            let r = full_census(&CurveCtx::from_m(m).unwrap(), 4);
            assert!(r.is_consistent(), "{:?}", r.discrepancies());
        }
        let r = full_census(&CurveCtx::from_m(2).unwrap(), 4);
        assert_eq!(r.classes.iter().map(|c| c.1).collect::<Vec<_>>(), vec![102, 16, 14, 9, 5]);
        assert_eq!(r.families[0].mass, Ratio::new(9, 2));
    }

    #[test]
    fn mass_equals_orbit_weight() {
        // Σ over orbits of 1/(2|Γ_x|) equals |𝒩|/(2|Γ|)
        let cc = CurveCtx::from_m(2).unwrap();
        for f in Family::ALL {
            let n = parameter_space(&cc, f).count() as i64;
            let g = group(&cc, f).len() as i64;
            assert_eq!(mass(&cc, &enumerate_family(&cc, f, 1)), Ratio::new(n, 2 * g));
        }
    }

    #[test]
    fn records_are_stable() {
        let r = full_census(&CurveCtx::from_m(1).unwrap(), 3);
        let lines = r.records();
        assert_eq!(lines[0], "field m=1 q=2");
        assert_eq!(lines.last().unwrap(), "total=20 mass=8 distinct_j=8");
    }
}
