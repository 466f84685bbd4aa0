use serde::{Deserialize, Serialize};

use super::intervals::{heterochromatic_disjoint_intervals, max_disjoint_intervals, min_point_stab_intervals, Span};
use super::{ChainMember, ChainOutcome, DisjointChain, StabResult, DISJOINT_TOL};
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

type Bounds = (Vec<f64>, Vec<f64>);

/// Closed boxes are disjoint iff some axis separates them.
pub fn boxes_disjoint(a: &Bounds, b: &Bounds) -> bool {
    (0..a.0.len()).any(|i| a.0[i] > b.1[i] + DISJOINT_TOL || b.0[i] > a.1[i] + DISJOINT_TOL)
}

fn bounds_of(boxes: &[ConvexBody]) -> Result<Vec<Bounds>> {
    let d = boxes.first().map(|b| b.dim()).unwrap_or(0);
    boxes
        .iter()
        .map(|b| {
            if b.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
            }
            b.as_box().ok_or_else(|| Error::Unsupported(format!("expected boxes, got {}", b.kind())))
        })
        .collect()
}

fn axis_spans(bounds: &[Bounds], axis: usize) -> Vec<Span> {
    bounds.iter().map(|b| (b.0[axis], b.1[axis])).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum BoxOutcome {
    /// Product point set `P_1 x ... x P_d` piercing every box.
    Pierced { stab: StabResult, axis_sizes: Vec<usize> },
    /// `m` pairwise-disjoint boxes (family = input position).
    Disjoint { chain: DisjointChain },
}

/// Point transversal of axis boxes from per-axis minimum stabbings.
///
/// With a target `m`, first looks for `m` pairwise-disjoint boxes: pulled
/// back from an axis whose projections hold `m` disjoint intervals, or
/// found by exhaustive search when no single axis does.
pub fn box_point_transversal(boxes: &[ConvexBody], m: Option<usize>) -> Result<BoxOutcome> {
    let bounds = bounds_of(boxes)?;
    if bounds.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = bounds[0].0.len();
    if let Some(m) = m {
        for axis in 0..d {
            let idx = max_disjoint_intervals(&axis_spans(&bounds, axis));
            if idx.len() >= m {
                let mut pick: Vec<usize> = idx[..m].to_vec();
                pick.sort_unstable();
                return Ok(BoxOutcome::Disjoint { chain: pull_back(boxes, &pick) });
            }
        }
        if let Some(pick) = disjoint_subfamily(&bounds, m) {
            return Ok(BoxOutcome::Disjoint { chain: pull_back(boxes, &pick) });
        }
    }
    let per_axis: Vec<StabResult> = (0..d).map(|a| min_point_stab_intervals(&axis_spans(&bounds, a))).collect();
    let sizes: Vec<usize> = per_axis.iter().map(|s| s.points.len()).collect();
    // mixed-radix enumeration of the product set
    let mut points = Vec::with_capacity(sizes.iter().product());
    let mut digits = vec![0usize; d];
    loop {
        points.push((0..d).map(|a| per_axis[a].points[digits[a]][0]).collect::<Vec<f64>>());
        let mut a = d;
        loop {
            if a == 0 {
                break;
            }
            a -= 1;
            digits[a] += 1;
            if digits[a] < sizes[a] {
                break;
            }
            digits[a] = 0;
        }
        if digits.iter().all(|&x| x == 0) {
            break;
        }
    }
    let covered: Vec<usize> = (0..bounds.len())
        .map(|i| (0..d).fold(0, |acc, a| acc * sizes[a] + per_axis[a].covered[i]))
        .collect();
    for (i, b) in boxes.iter().enumerate() {
        assert!(b.contains(&points[covered[i]], DISJOINT_TOL), "product point misses box {i}");
    }
    Ok(BoxOutcome::Pierced { stab: StabResult { points, covered }, axis_sizes: sizes })
}

fn pull_back(boxes: &[ConvexBody], pick: &[usize]) -> DisjointChain {
    let chain = DisjointChain { members: pick.iter().map(|&i| ChainMember { family: i, body: boxes[i].clone() }).collect() };
    assert!(chain.is_pairwise_disjoint(), "pulled-back boxes intersect");
    chain
}

/// Exhaustive search for `m` pairwise-disjoint boxes (lexicographically
/// first index set).
fn disjoint_subfamily(bounds: &[Bounds], m: usize) -> Option<Vec<usize>> {
    fn grow(bounds: &[Bounds], m: usize, from: usize, pick: &mut Vec<usize>) -> bool {
        if pick.len() == m {
            return true;
        }
        for i in from..bounds.len() {
            if bounds.len() - i < m - pick.len() {
                return false;
            }
            if pick.iter().all(|&j| boxes_disjoint(&bounds[i], &bounds[j])) {
                pick.push(i);
                if grow(bounds, m, i + 1, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    let mut pick = Vec::new();
    grow(bounds, m, 0, &mut pick).then_some(pick)
}

/// Heterochromatic chain of `m` pairwise-disjoint boxes: axes are tried in
/// order of how many families project to at least two disjoint intervals,
/// the interval builder runs on the projections and the winning intervals
/// are pulled back. An exhaustive search over the boxes themselves covers
/// chains no single axis separates.
pub fn heterochromatic_disjoint_boxes(families: &[Vec<ConvexBody>], m: usize) -> Result<ChainOutcome> {
    let bounds: Vec<Vec<Bounds>> = families.iter().map(|f| bounds_of(f)).collect::<Result<_>>()?;
    let d = bounds.iter().flatten().map(|b| b.0.len()).next().unwrap_or(1);
    let mut axes: Vec<(usize, usize)> = (0..d)
        .map(|a| {
            let score = bounds.iter().filter(|f| max_disjoint_intervals(&axis_spans(f, a)).len() >= 2).count();
            (a, score)
        })
        .collect();
    axes.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    for &(axis, _) in &axes {
        let spans: Vec<Vec<Span>> = bounds.iter().map(|f| axis_spans(f, axis)).collect();
        if let ChainOutcome::Chain { chain } = heterochromatic_disjoint_intervals(&spans, m) {
            let members = chain
                .members
                .iter()
                .map(|cm| {
                    let ConvexBody::Interval { lo, hi } = cm.body else { unreachable!() };
                    let pos = spans[cm.family].iter().position(|s| *s == (lo, hi)).expect("interval comes from the family");
                    ChainMember { family: cm.family, body: families[cm.family][pos].clone() }
                })
                .collect();
            let chain = DisjointChain { members };
            assert!(chain.is_heterochromatic() && chain.is_pairwise_disjoint());
            return Ok(ChainOutcome::Chain { chain });
        }
    }
    let mut pick: Vec<(usize, usize)> = Vec::new();
    if search_boxes(&bounds, m, 0, &mut pick) {
        let chain = DisjointChain {
            members: pick.iter().map(|&(f, i)| ChainMember { family: f, body: families[f][i].clone() }).collect(),
        };
        return Ok(ChainOutcome::Chain { chain });
    }
    Ok(ChainOutcome::Stuck { best: DisjointChain::default(), reason: format!("no heterochromatic disjoint selection of length {m} exists") })
}

fn search_boxes(fams: &[Vec<Bounds>], m: usize, from: usize, pick: &mut Vec<(usize, usize)>) -> bool {
    if pick.len() == m {
        return true;
    }
    for f in from..fams.len() {
        if fams.len() - f < m - pick.len() {
            return false;
        }
        for (i, b) in fams[f].iter().enumerate() {
            if pick.iter().all(|&(g, j)| boxes_disjoint(b, &fams[g][j])) {
                pick.push((f, i));
                if search_boxes(fams, m, f + 1, pick) {
                    return true;
                }
                pick.pop();
            }
        }
    }
    false
}
