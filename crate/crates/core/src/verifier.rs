//! Finite-prefix checks: piercing-number growth, heterochromatic audits,
//! the compactness utility and independence certificates.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::stabbing::min_piercing_number;
use crate::transversal::{is_k_dependent, transversal, DependenceCertificate, DEFAULT_BUDGET};

/// Selections audited in parallel per batch; results are merged in batch
/// order so reports do not depend on the thread count.
const AUDIT_BATCH: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub size: usize,
    pub exact: Option<usize>,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthCurve {
    pub k: usize,
    pub points: Vec<GrowthPoint>,
}

/// Largest greedily built subfamily with no k+2 members certified on one
/// k-flat.
fn independent_subfamily(bodies: &[ConvexBody], k: usize) -> Result<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..bodies.len() {
        let mut ok = true;
        for group in chosen.iter().copied().combinations(k + 1) {
            let mut sub: Vec<ConvexBody> = group.iter().map(|&j| bodies[j].clone()).collect();
            sub.push(bodies[i].clone());
            if !transversal(k, &sub, DEFAULT_BUDGET)?.is_certified_empty() {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(i);
        }
    }
    Ok(chosen.len())
}

/// Greedy cover by k-flats: each group grows while a witness flat exists.
fn greedy_flat_cover(bodies: &[ConvexBody], k: usize) -> Result<usize> {
    let mut left: Vec<usize> = (0..bodies.len()).collect();
    let mut groups = 0;
    while let Some(&first) = left.first() {
        let mut group = vec![first];
        for &i in &left[1..] {
            let mut sub: Vec<ConvexBody> = group.iter().map(|&j| bodies[j].clone()).collect();
            sub.push(bodies[i].clone());
            if transversal(k, &sub, DEFAULT_BUDGET)?.is_pierced() {
                group.push(i);
            }
        }
        left.retain(|i| !group.contains(i));
        groups += 1;
    }
    Ok(groups)
}

/// Piercing numbers of the prefixes `bodies[..s]` for each `s` in `sizes`:
/// exact for k = 0 within the solver's reach, and bounds for any k. The
/// lower bound is `ceil(t / (k+1))` for `t` members no k+2 of which share a
/// k-flat, the upper bound a greedy flat cover.
pub fn piercing_growth(bodies: &[ConvexBody], sizes: &[usize], k: usize) -> Result<GrowthCurve> {
    let mut points = Vec::with_capacity(sizes.len());
    let mut last_lower = 0;
    for &s in sizes {
        if s == 0 || s > bodies.len() {
            return Err(Error::PrereqViolated(format!("prefix size {s} outside 1..={}", bodies.len())));
        }
        let prefix = &bodies[..s];
        let exact = if k == 0 {
            match min_piercing_number(prefix) {
                Ok(sol) => Some(sol.count),
                Err(Error::TooLarge { .. } | Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let t = independent_subfamily(prefix, k)?;
        // a bound for a prefix bounds every longer prefix too
        let lower = t.div_ceil(k + 1).max(last_lower);
        let upper = greedy_flat_cover(prefix, k)?;
        if let Some(e) = exact {
            assert!(lower <= e && e <= upper, "bounds {lower}..{upper} miss exact value {e}");
        }
        last_lower = lower;
        points.push(GrowthPoint { size: s, exact, lower, upper });
    }
    let exact: Vec<usize> = points.iter().filter_map(|p| p.exact).collect();
    let sorted_sizes = points.windows(2).all(|w| w[0].size <= w[1].size);
    if sorted_sizes {
        assert!(exact.windows(2).all(|w| w[0] <= w[1]), "piercing numbers decreased along prefixes");
    }
    Ok(GrowthCurve { k, points })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Property {
    Pq { p: usize, q: usize, k: usize },
    StrictHetero { k: usize },
    Hetero { k: usize },
}

/// One member per listed family: `(family, member)` positions.
pub type Selection = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails { counterexample: Selection },
    Inconclusive { unknown: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive { count: usize },
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionCertificate {
    pub selection: Selection,
    pub certificate: DependenceCertificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub property: Property,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub coverage: Coverage,
    /// Certificates for the dependent selections, in audit order.
    pub certificates: Vec<SelectionCertificate>,
}

enum Outcome {
    Dependent(DependenceCertificate),
    Independent,
    Unknown,
}

fn judge(families: &[Vec<ConvexBody>], sel: &Selection, k: usize) -> Result<Outcome> {
    let seq: Vec<ConvexBody> = sel.iter().map(|&(f, j)| families[f][j].clone()).collect();
    match is_k_dependent(&seq, k) {
        Ok(Some(c)) => Ok(Outcome::Dependent(c)),
        Ok(None) => Ok(Outcome::Independent),
        Err(Error::Inconclusive { .. }) => Ok(Outcome::Unknown),
        Err(e) => Err(e),
    }
}

fn run_audit(families: &[Vec<ConvexBody>], property: Property, k: usize, selections: Vec<Selection>, coverage: Coverage) -> Result<AuditReport> {
    let mut certificates = Vec::new();
    let mut unknown = 0;
    for batch in selections.chunks(AUDIT_BATCH) {
        let outcomes: Vec<Result<Outcome>> = batch.par_iter().map(|s| judge(families, s, k)).collect();
        for (sel, out) in batch.iter().zip(outcomes) {
            match out? {
                Outcome::Dependent(certificate) => certificates.push(SelectionCertificate { selection: sel.clone(), certificate }),
                Outcome::Independent => {
                    return Ok(AuditReport { property, verdict: Verdict::Fails { counterexample: sel.clone() }, coverage, certificates })
                }
                Outcome::Unknown => unknown += 1,
            }
        }
    }
    let verdict = if unknown > 0 { Verdict::Inconclusive { unknown } } else { Verdict::Holds };
    Ok(AuditReport { property, verdict, coverage, certificates })
}

fn check_families(families: &[Vec<ConvexBody>], k: usize) -> Result<()> {
    if families.len() < k + 2 {
        return Err(Error::PrereqViolated(format!("{} families, need at least k+2 = {}", families.len(), k + 2)));
    }
    if let Some(f) = families.iter().position(|f| f.is_empty()) {
        return Err(Error::PrereqViolated(format!("family {f} is empty")));
    }
    Ok(())
}

/// Every choice of members from the given families, in lexicographic order.
fn product(families: &[usize], sizes: &[usize]) -> Vec<Selection> {
    families.iter().map(|&f| (0..sizes[f]).map(move |j| (f, j))).multi_cartesian_product().collect()
}

/// Audits "every selection of one member from each family is k-dependent".
/// Exhaustive when the number of selections is within `budget`, otherwise
/// `budget` seeded uniform samples.
pub fn audit_strict_heterochromatic(families: &[Vec<ConvexBody>], k: usize, budget: usize, seed: u64) -> Result<AuditReport> {
    check_families(families, k)?;
    let sizes: Vec<usize> = families.iter().map(Vec::len).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    let all: Vec<usize> = (0..families.len()).collect();
    let (selections, coverage) = match total {
        Some(t) if t <= budget => (product(&all, &sizes), Coverage::Exhaustive { count: t }),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sel = (0..budget).map(|_| all.iter().map(|&f| (f, rng.gen_range(0..sizes[f]))).collect()).collect();
            (sel, Coverage::Sampled { count: budget, seed })
        }
    };
    run_audit(families, Property::StrictHetero { k }, k, selections, coverage)
}

/// Audits "every heterochromatic selection is k-dependent" on selections of
/// k+2 members from strictly increasing families; longer selections contain
/// such a selection, so a failure among them implies one here.
pub fn audit_heterochromatic(families: &[Vec<ConvexBody>], k: usize, budget: usize, seed: u64) -> Result<AuditReport> {
    check_families(families, k)?;
    let sizes: Vec<usize> = families.iter().map(Vec::len).collect();
    let subsets: Vec<Vec<usize>> = (0..families.len()).combinations(k + 2).collect();
    let total = subsets.iter().try_fold(0usize, |acc, s| s.iter().try_fold(1usize, |p, &f| p.checked_mul(sizes[f])).and_then(|c| acc.checked_add(c)));
    let (selections, coverage) = match total {
        Some(t) if t <= budget => (subsets.iter().flat_map(|s| product(s, &sizes)).collect(), Coverage::Exhaustive { count: t }),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sel = (0..budget)
                .map(|_| {
                    let s = &subsets[rng.gen_range(0..subsets.len())];
                    s.iter().map(|&f| (f, rng.gen_range(0..sizes[f]))).collect()
                })
                .collect();
            (sel, Coverage::Sampled { count: budget, seed })
        }
    };
    run_audit(families, Property::Hetero { k }, k, selections, coverage)
}

/// Re-checks that a selection is certified k-independent.
pub fn selection_is_independent(families: &[Vec<ConvexBody>], selection: &Selection, k: usize) -> Result<bool> {
    Ok(matches!(judge(families, selection, k)?, Outcome::Independent))
}

/// Whether `bodies` can be pierced by `m` k-flats: `Some` when decided by
/// certified procedures, `None` otherwise.
pub fn pierceable_by(bodies: &[ConvexBody], m: usize, k: usize) -> Result<Option<bool>> {
    if m >= bodies.len() {
        return Ok(Some(true));
    }
    if m == 0 {
        return Ok(Some(false));
    }
    if k == 0 {
        match min_piercing_number(bodies) {
            Ok(sol) => return Ok(Some(sol.count <= m)),
            Err(Error::TooLarge { .. } | Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    // set partitions into at most m blocks
    let mut undecided = false;
    let mut block = vec![0usize; bodies.len()];
    loop {
        let blocks = block.iter().max().map_or(0, |b| b + 1);
        if blocks <= m {
            let mut all = true;
            let mut dead = false;
            for b in 0..blocks {
                let group: Vec<ConvexBody> = (0..bodies.len()).filter(|&i| block[i] == b).map(|i| bodies[i].clone()).collect();
                let ans = transversal(k, &group, DEFAULT_BUDGET)?;
                if ans.is_certified_empty() {
                    dead = true;
                    all = false;
                    break;
                }
                all &= ans.is_pierced();
            }
            if all {
                return Ok(Some(true));
            }
            undecided |= !dead;
        }
        // next restricted growth string
        let mut i = bodies.len();
        loop {
            if i <= 1 {
                return Ok(if undecided { None } else { Some(false) });
            }
            i -= 1;
            let cap = block[..i].iter().max().map_or(0, |b| b + 1);
            if block[i] < cap && block[i] + 1 < m {
                block[i] += 1;
                for b in &mut block[i + 1..] {
                    *b = 0;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "conclusion", rename_all = "kebab-case")]
pub enum CompactnessConclusion {
    /// Every t-subset and the whole family are pierceable.
    Consistent,
    /// Every t-subset is pierceable but the whole family is not.
    Contradiction,
    /// Some t-subset is not pierceable; nothing follows.
    HypothesisFails { subset: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactnessReport {
    pub t: usize,
    pub m: usize,
    pub k: usize,
    #[serde(flatten)]
    pub conclusion: CompactnessConclusion,
}

/// Finite check of "every t members pierceable by m k-flats implies the
/// whole family is".
pub fn compactness_check(bodies: &[ConvexBody], t: usize, m: usize, k: usize) -> Result<CompactnessReport> {
    if t == 0 || t > bodies.len() {
        return Err(Error::PrereqViolated(format!("subset size {t} outside 1..={}", bodies.len())));
    }
    let mut unknown = 0;
    for subset in (0..bodies.len()).combinations(t) {
        let sub: Vec<ConvexBody> = subset.iter().map(|&i| bodies[i].clone()).collect();
        match pierceable_by(&sub, m, k)? {
            Some(true) => {}
            Some(false) => return Ok(CompactnessReport { t, m, k, conclusion: CompactnessConclusion::HypothesisFails { subset } }),
            None => unknown += 1,
        }
    }
    if unknown > 0 {
        return Err(Error::Inconclusive { unknown });
    }
    let conclusion = match pierceable_by(bodies, m, k)? {
        Some(true) => CompactnessConclusion::Consistent,
        Some(false) => CompactnessConclusion::Contradiction,
        None => return Err(Error::Inconclusive { unknown: 1 }),
    };
    Ok(CompactnessReport { t, m, k, conclusion })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum IndependenceVerdict {
    Holds,
    Fails { certificate: DependenceCertificate },
}

/// Holds iff every k+2 members are certified to share no k-flat. Shorter
/// sequences hold vacuously.
pub fn independent_certificate_check(seq: &[ConvexBody], k: usize) -> Result<IndependenceVerdict> {
    if seq.len() < k + 2 {
        return Ok(IndependenceVerdict::Holds);
    }
    Ok(match is_k_dependent(seq, k)? {
        None => IndependenceVerdict::Holds,
        Some(certificate) => IndependenceVerdict::Fails { certificate },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_tangent_rect, gen_unit_ball_grid, nested_cone_stream, TangentIndex};
    use crate::geometry::Direction;
    use crate::sequence::build_independent;

    fn ball(c: &[f64], r: f64) -> ConvexBody {
        ConvexBody::ball(c.to_vec(), r).unwrap()
    }

    #[test]
    fn grid_growth_is_linear() {
        let row: Vec<_> = (1..=6).map(|j| gen_unit_ball_grid(3, j).unwrap()).collect();
        let curve = piercing_growth(&row, &[1, 2, 3, 4, 5, 6], 0).unwrap();
        let exact: Vec<_> = curve.points.iter().map(|p| p.exact.unwrap()).collect();
        assert_eq!(exact, vec![1, 2, 3, 4, 5, 6]);
        assert!(curve.points.iter().all(|p| p.lower == p.size));
    }

    #[test]
    fn tangent_prefix_growth_is_recorded() {
        let rects: Vec<_> = (2..=11).map(|n| gen_tangent_rect(TangentIndex::new(n, 1).unwrap()).unwrap()).collect();
        let curve = piercing_growth(&rects, &[2, 4, 6, 8, 10], 0).unwrap();
        for p in &curve.points {
            assert_eq!(p.lower, 1);
            assert!(p.exact.unwrap() >= 1);
        }
    }

    #[test]
    fn first_two_grid_families() {
        let mut fam = vec![gen_unit_ball_grid(1, 1).unwrap()];
        fam.extend((1..=4).map(|j| gen_unit_ball_grid(2, j).unwrap()));
        let curve = piercing_growth(&fam, &[5], 0).unwrap();
        assert!(curve.points[0].exact.unwrap() <= 5);
    }

    #[test]
    fn line_bounds() {
        let fam: Vec<_> = (0..6).map(|i| ball(&[4.0 * i as f64, if i < 3 { 0.0 } else { 10.0 }], 1.0)).collect();
        let curve = piercing_growth(&fam, &[6], 1).unwrap();
        let p = &curve.points[0];
        assert!(p.exact.is_none());
        assert!(p.lower <= p.upper);
        assert_eq!(p.upper, 2);
    }

    #[test]
    fn strict_audits() {
        let same: Vec<Vec<ConvexBody>> = (0..3).map(|_| vec![ball(&[0.0, 0.0], 1.0)]).collect();
        let r = audit_strict_heterochromatic(&same, 0, 100, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.coverage, Coverage::Exhaustive { count: 1 });

        let far: Vec<Vec<ConvexBody>> = (0..3).map(|i| vec![ball(&[10.0 * i as f64, 0.0], 1.0)]).collect();
        let r = audit_strict_heterochromatic(&far, 0, 100, 1).unwrap();
        let Verdict::Fails { counterexample } = &r.verdict else { panic!() };
        assert_eq!(counterexample, &vec![(0, 0), (1, 0), (2, 0)]);
        assert!(selection_is_independent(&far, counterexample, 0).unwrap());
    }

    #[test]
    fn sampled_audits_are_deterministic() {
        let fams: Vec<Vec<ConvexBody>> = (0..6).map(|n| (0..5).map(|j| ball(&[j as f64, n as f64 * 0.5], 1.0)).collect()).collect();
        let a = audit_strict_heterochromatic(&fams, 0, 20, 9).unwrap();
        let b = audit_strict_heterochromatic(&fams, 0, 20, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coverage, Coverage::Sampled { count: 20, seed: 9 });
        assert_eq!(a.verdict, Verdict::Holds);
        assert!(a.certificates.iter().all(|c| {
            let seq: Vec<_> = c.selection.iter().map(|&(f, j)| fams[f][j].clone()).collect();
            c.certificate.verify(&seq)
        }));
    }

    #[test]
    fn heterochromatic_audits() {
        let same = vec![vec![ball(&[0.0, 0.0], 1.0)], vec![ball(&[0.0, 0.0], 1.0)]];
        assert_eq!(audit_heterochromatic(&same, 0, 100, 0).unwrap().verdict, Verdict::Holds);
        let shells: Vec<Vec<ConvexBody>> = (1..=3).map(|i| vec![ball(&[100.0 * i as f64, 0.0], 1.0)]).collect();
        assert!(matches!(audit_heterochromatic(&shells, 0, 100, 0).unwrap().verdict, Verdict::Fails { .. }));
        let grid: Vec<Vec<ConvexBody>> = (3..=8).map(|n| (1..=3).map(|j| gen_unit_ball_grid(n, j).unwrap()).collect()).collect();
        let r = audit_heterochromatic(&grid, 0, 10_000, 0).unwrap();
        let Verdict::Fails { counterexample } = r.verdict else { panic!() };
        assert!(selection_is_independent(&grid, &counterexample, 0).unwrap());
    }

    #[test]
    fn compactness_examples() {
        let iv: Vec<_> = [(0.0, 3.0), (1.0, 4.0), (2.0, 5.0), (2.5, 2.6)].iter().map(|&(a, b)| ConvexBody::interval(a, b).unwrap()).collect();
        assert_eq!(compactness_check(&iv, 2, 1, 0).unwrap().conclusion, CompactnessConclusion::Consistent);

        let disjoint: Vec<_> = (0..5).map(|i| ball(&[10.0 * i as f64, 0.0], 1.0)).collect();
        assert_eq!(compactness_check(&disjoint, 3, 5, 0).unwrap().conclusion, CompactnessConclusion::Consistent);

        let f2: Vec<_> = (1..=4).map(|j| gen_unit_ball_grid(2, j).unwrap()).collect();
        let r = compactness_check(&f2, 2, 1, 0).unwrap();
        assert_eq!(r.conclusion, CompactnessConclusion::HypothesisFails { subset: vec![0, 1] });
    }

    #[test]
    fn partitions_into_lines() {
        let fam: Vec<_> = (0..6).map(|i| ball(&[4.0 * i as f64, if i < 3 { 0.0 } else { 10.0 }], 1.0)).collect();
        assert_eq!(pierceable_by(&fam, 2, 1).unwrap(), Some(true));
        let spread = vec![ball(&[0.0, 0.0], 1.0), ball(&[20.0, 0.0], 1.0), ball(&[10.0, 20.0], 1.0), ball(&[10.0, -20.0], 1.0), ball(&[30.0, 30.0], 1.0)];
        assert_eq!(pierceable_by(&spread, 1, 1).unwrap(), Some(false));
    }

    #[test]
    fn independence_checks() {
        let out = build_independent(1, Direction::axis(2, 0), &mut (1..=6).map(nested_cone_stream).collect::<Vec<_>>(), 6).unwrap();
        let seq: Vec<_> = out.chain().unwrap().members.iter().map(|m| m.body.clone()).collect();
        assert_eq!(independent_certificate_check(&seq, 1).unwrap(), IndependenceVerdict::Holds);
        let meet = vec![ball(&[0.0, 0.0], 1.0), ball(&[5.0, 0.0], 1.0), ball(&[1.0, 0.0], 1.0)];
        assert!(matches!(independent_certificate_check(&meet, 0).unwrap(), IndependenceVerdict::Fails { .. }));
        assert_eq!(independent_certificate_check(&seq[..2], 1).unwrap(), IndependenceVerdict::Holds);
        assert_eq!(independent_certificate_check(&seq[..3], 1).unwrap(), IndependenceVerdict::Holds);
    }
}
