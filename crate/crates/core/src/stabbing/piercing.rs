use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{bodies_disjoint, DISJOINT_TOL};
use crate::error::{Error, Result};
use crate::geometry::candidates::{planar_candidates, supports_planar};
use crate::geometry::ConvexBody;

/// Largest family the exact solver accepts.
pub const PIERCING_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiercingSolution {
    pub count: usize,
    pub points: Vec<Vec<f64>>,
}

/// Candidate points together with the set of bodies each one lies in.
///
/// The candidate sets are complete: every nonempty intersection of some of
/// the bodies contains a candidate.
fn candidates(bodies: &[ConvexBody]) -> Result<Vec<(u32, Vec<f64>)>> {
    let d = bodies[0].dim();
    if bodies.iter().any(|b| b.dim() != d) {
        let bad = bodies.iter().find(|b| b.dim() != d).unwrap();
        return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
    }
    let mask_of = |p: &[f64]| -> u32 {
        bodies.iter().enumerate().filter(|(_, b)| b.contains(p, DISJOINT_TOL)).fold(0, |m, (i, _)| m | 1 << i)
    };
    if let Some(bounds) = bodies.iter().map(|b| b.as_box()).collect::<Option<Vec<_>>>() {
        // the lowest upper corner of any nonempty box intersection lies in
        // every box of it, so the grid of upper ends is complete
        let mut pts: Vec<(u32, Vec<f64>)> = vec![(u32::MAX >> (32 - bodies.len()), Vec::new())];
        for a in 0..d {
            let mut axis: Vec<(u32, f64)> = Vec::new();
            for (_, hi) in &bounds {
                let x = hi[a];
                let m = bounds
                    .iter()
                    .enumerate()
                    .filter(|(_, (lo, hi))| lo[a] <= x + DISJOINT_TOL && x <= hi[a] + DISJOINT_TOL)
                    .fold(0, |m, (i, _)| m | 1 << i);
                if !axis.iter().any(|&(n, _)| n == m) {
                    axis.push((m, x));
                }
            }
            let mut next: Vec<(u32, Vec<f64>)> = Vec::new();
            for (m, p) in &pts {
                for &(n, x) in &axis {
                    let k = m & n;
                    if k != 0 && !next.iter().any(|(j, _)| *j == k) {
                        let mut q = p.clone();
                        q.push(x);
                        next.push((k, q));
                    }
                }
            }
            pts = next;
        }
        return Ok(pts);
    }
    if d == 2 && supports_planar(bodies) {
        return Ok(planar_candidates(bodies).into_iter().map(|p| (mask_of(&p), p.to_vec())).collect());
    }
    if d == 1 {
        return Ok(bodies
            .iter()
            .map(|b| {
                let p = vec![b.bounds().1[0]];
                (mask_of(&p), p)
            })
            .collect());
    }
    Err(Error::Unsupported(format!("exact piercing needs intervals, boxes or planar bodies, got {}", bodies[0].kind())))
}

/// Exact piercing number of a small family by set cover over a complete
/// candidate set.
pub fn min_piercing_number(bodies: &[ConvexBody]) -> Result<PiercingSolution> {
    if bodies.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bodies.len() > PIERCING_LIMIT {
        return Err(Error::TooLarge { size: bodies.len(), limit: PIERCING_LIMIT });
    }
    let n = bodies.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut cands = candidates(bodies)?;
    cands.retain(|(m, _)| *m != 0);
    // drop duplicates and dominated sets
    cands.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));
    let mut kept: Vec<(u32, Vec<f64>)> = Vec::new();
    for (m, p) in cands {
        if !kept.iter().any(|(k, _)| k & m == m) {
            kept.push((m, p));
        }
    }
    let union = kept.iter().fold(0, |u, (m, _)| u | m);
    if union != full {
        return Err(Error::VerificationFailed("candidate set misses a body".into()));
    }

    let mut best = greedy(&kept, full);
    let lower = packing_bound(&kept, n);
    let mut pick = Vec::new();
    if best.len() > lower {
        branch(&kept, full, 0, &mut pick, &mut best, lower);
    }
    // disjoint bodies need distinct points
    let disjoint = disjoint_packing(bodies);
    assert!(best.len() >= disjoint, "piercing set smaller than a disjoint packing");

    let points: Vec<Vec<f64>> = best.iter().map(|&i| kept[i].1.clone()).collect();
    for (i, b) in bodies.iter().enumerate() {
        if !points.iter().any(|p| b.contains(p, DISJOINT_TOL)) {
            return Err(Error::VerificationFailed(format!("body {i} is not pierced")));
        }
    }
    Ok(PiercingSolution { count: points.len(), points })
}

fn greedy(sets: &[(u32, Vec<f64>)], full: u32) -> Vec<usize> {
    let mut covered = 0;
    let mut out = Vec::new();
    while covered != full {
        let (i, _) = sets.iter().enumerate().max_by_key(|(i, (m, _))| ((m & !covered).count_ones(), std::cmp::Reverse(*i))).unwrap();
        covered |= sets[i].0;
        out.push(i);
    }
    out
}

/// Bodies no candidate covers together need distinct points.
fn packing_bound(sets: &[(u32, Vec<f64>)], n: usize) -> usize {
    let together = |i: usize, j: usize| sets.iter().any(|(m, _)| m >> i & 1 == 1 && m >> j & 1 == 1);
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..n {
        if chosen.iter().all(|&j| !together(i, j)) {
            chosen.push(i);
        }
    }
    chosen.len()
}

fn branch(sets: &[(u32, Vec<f64>)], full: u32, covered: u32, pick: &mut Vec<usize>, best: &mut Vec<usize>, lower: usize) {
    if best.len() <= lower {
        return;
    }
    if covered == full {
        if pick.len() < best.len() {
            *best = pick.clone();
        }
        return;
    }
    if pick.len() + 1 >= best.len() {
        return;
    }
    let low = (!covered & full).trailing_zeros();
    let seen: BTreeSet<usize> = pick.iter().copied().collect();
    for (i, (m, _)) in sets.iter().enumerate() {
        if m >> low & 1 == 1 && !seen.contains(&i) {
            pick.push(i);
            branch(sets, full, covered | m, pick, best, lower);
            pick.pop();
        }
    }
}

fn disjoint_packing(bodies: &[ConvexBody]) -> usize {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..bodies.len() {
        if chosen.iter().all(|&j| bodies_disjoint(&bodies[i], &bodies[j])) {
            chosen.push(i);
        }
    }
    chosen.len()
}
