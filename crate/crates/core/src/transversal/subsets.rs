use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{transversal, DependenceCertificate, TransversalAnswer, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

const BATCH: usize = 64;

fn solve(k: usize, seq: &[ConvexBody], idx: &[usize], budget: usize) -> Result<TransversalAnswer> {
    let subset: Vec<ConvexBody> = idx.iter().map(|&i| seq[i].clone()).collect();
    transversal(k, &subset, budget)
}

/// First (k+2)-subset, in lexicographic order, pierced by a common k-flat.
///
/// `Ok(None)` means every subset is certified empty; subsets that could not
/// be decided (and no pierced subset) yield `Error::Inconclusive`.
pub fn is_k_dependent(seq: &[ConvexBody], k: usize) -> Result<Option<DependenceCertificate>> {
    is_k_dependent_with(seq, k, DEFAULT_BUDGET)
}

/// [`is_k_dependent`] with an explicit frame budget for the heuristic search.
pub fn is_k_dependent_with(seq: &[ConvexBody], k: usize, budget: usize) -> Result<Option<DependenceCertificate>> {
    if seq.len() < k + 2 {
        return Err(Error::PrereqViolated(format!("sequence of length {} is shorter than k+2 = {}", seq.len(), k + 2)));
    }
    let mut unknown = 0;
    let mut subsets = (0..seq.len()).combinations(k + 2);
    loop {
        let batch: Vec<Vec<usize>> = subsets.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let answers: Vec<Result<TransversalAnswer>> = batch.par_iter().map(|idx| solve(k, seq, idx, budget)).collect();
        for (idx, answer) in batch.into_iter().zip(answers) {
            let answer = answer?;
            if let Some(flat) = answer.witness() {
                return Ok(Some(DependenceCertificate { indices: idx, flat: flat.clone() }));
            }
            if !answer.is_certified_empty() {
                unknown += 1;
            }
        }
    }
    if unknown > 0 {
        return Err(Error::Inconclusive { unknown });
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PqReport {
    pub holds: bool,
    /// First p-subset (0-based positions) with no pierced q-subset.
    pub counterexample: Option<Vec<usize>>,
}

/// Every p-subset contains q members pierced by a common k-flat.
pub fn has_pq_property(bodies: &[ConvexBody], p: usize, q: usize, k: usize) -> Result<PqReport> {
    if !(q >= 1 && q <= p && p <= bodies.len()) {
        return Err(Error::PrereqViolated(format!("need 1 <= q <= p <= {}, got p = {p}, q = {q}", bodies.len())));
    }
    let qsets: Vec<Vec<usize>> = (0..bodies.len()).combinations(q).collect();
    let answers: Vec<Result<TransversalAnswer>> = qsets.par_iter().map(|idx| solve(k, bodies, idx, DEFAULT_BUDGET)).collect();
    // 1 = pierced, 0 = certified empty, 2 = undecided
    let mut state: HashMap<Vec<usize>, u8> = HashMap::with_capacity(qsets.len());
    for (idx, a) in qsets.into_iter().zip(answers) {
        let a = a?;
        let s = if a.is_pierced() {
            1
        } else if a.is_certified_empty() {
            0
        } else {
            2
        };
        state.insert(idx, s);
    }
    let mut undecided = 0;
    for pset in (0..bodies.len()).combinations(p) {
        let mut any_unknown = false;
        let mut ok = false;
        for qset in pset.iter().copied().combinations(q) {
            match state[&qset] {
                1 => {
                    ok = true;
                    break;
                }
                2 => any_unknown = true,
                _ => {}
            }
        }
        if !ok {
            if any_unknown {
                undecided += 1;
            } else {
                return Ok(PqReport { holds: false, counterexample: Some(pset) });
            }
        }
    }
    if undecided > 0 {
        return Err(Error::Inconclusive { unknown: undecided });
    }
    Ok(PqReport { holds: true, counterexample: None })
}
