use serde::{Deserialize, Serialize};

use super::{ChainMember, ChainOutcome, DisjointChain, StabResult, DISJOINT_TOL};
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

/// Closed interval `(lo, hi)`.
pub type Span = (f64, f64);

fn meets(a: Span, b: Span) -> bool {
    a.0 <= b.1 + DISJOINT_TOL && b.0 <= a.1 + DISJOINT_TOL
}

fn disjoint(a: Span, b: Span) -> bool {
    !meets(a, b)
}

pub(crate) fn span_body(s: Span) -> ConvexBody {
    ConvexBody::Interval { lo: s.0, hi: s.1 }
}

/// Minimum point transversal of closed intervals: sweep by right endpoint
/// and stab each interval not yet hit at its right end.
pub fn min_point_stab_intervals(intervals: &[Span]) -> StabResult {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals[a].1.total_cmp(&intervals[b].1).then(a.cmp(&b)));
    let mut points: Vec<f64> = Vec::new();
    for &i in &order {
        let (lo, hi) = intervals[i];
        match points.last() {
            Some(&p) if p >= lo - DISJOINT_TOL => {}
            _ => points.push(hi),
        }
    }
    // points ascend, so each interval takes the first point at or after lo
    let covered = intervals
        .iter()
        .map(|&(lo, hi)| {
            let k = points.partition_point(|&p| p < lo - DISJOINT_TOL);
            debug_assert!(k < points.len() && points[k] <= hi + DISJOINT_TOL);
            k
        })
        .collect();
    StabResult { points: points.into_iter().map(|p| vec![p]).collect(), covered }
}

/// Indices of a maximum set of pairwise-disjoint intervals (greedy by
/// right endpoint), in ascending position.
pub fn max_disjoint_intervals(intervals: &[Span]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals[a].1.total_cmp(&intervals[b].1).then(a.cmp(&b)));
    let mut chosen: Vec<usize> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for i in order {
        if intervals[i].0 > last + DISJOINT_TOL {
            chosen.push(i);
            last = intervals[i].1;
        }
    }
    chosen
}

/// Chain index `j` and two disjoint family members strictly inside `I_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NestedPair {
    pub j: usize,
    pub first: Span,
    pub second: Span,
}

/// Exchange step for a pairwise-disjoint chain `I_1..I_m` that every member
/// of `family` meets. Members meeting two or more chain intervals are set
/// aside; the rest split into classes by the single `I_j` they meet. Inside
/// a class only members avoiding both endpoints of `I_j` qualify, and the
/// first class holding two disjoint qualifying members wins.
pub fn find_nested_disjoint_pair(family: &[Span], chain: &[Span]) -> Result<Option<NestedPair>> {
    for (a, &x) in chain.iter().enumerate() {
        for &y in &chain[a + 1..] {
            if meets(x, y) {
                return Err(Error::PrereqViolated("chain intervals are not pairwise disjoint".into()));
            }
        }
    }
    let mut classes: Vec<Vec<Span>> = vec![Vec::new(); chain.len()];
    for &s in family {
        let hit: Vec<usize> = (0..chain.len()).filter(|&j| meets(s, chain[j])).collect();
        match hit.len() {
            0 => return Err(Error::PrereqViolated(format!("member [{}, {}] misses every chain interval", s.0, s.1))),
            1 => classes[hit[0]].push(s),
            _ => {}
        }
    }
    for (j, class) in classes.iter().enumerate() {
        let (alpha, beta) = chain[j];
        let inner: Vec<Span> = class.iter().copied().filter(|s| s.0 > alpha + DISJOINT_TOL && s.1 < beta - DISJOINT_TOL).collect();
        let Some(&first) = inner.iter().min_by(|a, b| a.1.total_cmp(&b.1)) else { continue };
        if let Some(&second) = inner.iter().filter(|s| disjoint(first, **s)).min_by(|a, b| a.1.total_cmp(&b.1)) {
            return Ok(Some(NestedPair { j, first, second }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "lowercase")]
pub enum ChainStep {
    Appended { chain: Vec<Span> },
    Exchanged { chain: Vec<Span>, dropped: usize },
    Stuck,
}

/// Grows a pairwise-disjoint chain by one: append a member disjoint from
/// the whole chain, or drop some `I_j` for two disjoint members nested in it.
pub fn extend_disjoint_chain(family: &[Span], chain: &[Span]) -> Result<ChainStep> {
    if let Some(&s) = family.iter().find(|&&s| chain.iter().all(|&c| disjoint(s, c))) {
        let mut next = chain.to_vec();
        next.push(s);
        return Ok(ChainStep::Appended { chain: next });
    }
    let Some(pair) = find_nested_disjoint_pair(family, chain)? else { return Ok(ChainStep::Stuck) };
    let mut next = chain.to_vec();
    next.splice(pair.j..=pair.j, [pair.first, pair.second]);
    for (a, &x) in next.iter().enumerate() {
        assert!(next[a + 1..].iter().all(|&y| disjoint(x, y)), "exchange broke disjointness");
    }
    Ok(ChainStep::Exchanged { chain: next, dropped: pair.j })
}

struct Builder<'a> {
    families: &'a [Vec<Span>],
    target: usize,
    nodes: usize,
}

const SEARCH_NODES: usize = 2_000_000;

impl Builder<'_> {
    /// Cascade: take a fresh member disjoint from the chain; when a family
    /// is blocked, swap a chain member for one of the blocked family's
    /// members nested inside it and re-place the displaced color.
    fn cascade(&self) -> Vec<(usize, Span)> {
        let mut chain: Vec<(usize, Span)> = Vec::new();
        for (f, fam) in self.families.iter().enumerate() {
            if chain.len() == self.target {
                break;
            }
            let free = |chain: &[(usize, Span)], s: Span| chain.iter().all(|&(_, c)| disjoint(s, c));
            if let Some(&s) = shortest(fam.iter().filter(|&&s| free(&chain, s))) {
                chain.push((f, s));
                continue;
            }
            // exchange: a member of f strictly inside some chain interval
            'swap: for pos in 0..chain.len() {
                let (g, host) = chain[pos];
                let rest: Vec<(usize, Span)> = chain.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &m)| m).collect();
                for &s in fam.iter().filter(|s| s.0 > host.0 && s.1 < host.1 && free(&rest, **s)) {
                    let mut trial = rest.clone();
                    trial.push((f, s));
                    if let Some(&t) = shortest(self.families[g].iter().filter(|&&t| free(&trial, t))) {
                        trial.push((g, t));
                        trial.sort_by_key(|m| m.0);
                        chain = trial;
                        break 'swap;
                    }
                }
            }
        }
        chain
    }

    /// Exhaustive search over increasing family indices.
    fn search(&mut self, from: usize, chain: &mut Vec<(usize, Span)>) -> bool {
        if chain.len() == self.target {
            return true;
        }
        if self.nodes > SEARCH_NODES || self.families.len() - from < self.target - chain.len() {
            return false;
        }
        for f in from..self.families.len() {
            if self.families.len() - f < self.target - chain.len() {
                break;
            }
            for &s in &self.families[f] {
                self.nodes += 1;
                if chain.iter().all(|&(_, c)| disjoint(s, c)) {
                    chain.push((f, s));
                    if self.search(f + 1, chain) {
                        return true;
                    }
                    chain.pop();
                }
            }
        }
        false
    }
}

fn shortest<'a>(it: impl Iterator<Item = &'a Span>) -> Option<&'a Span> {
    it.min_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)))
}

fn to_chain(members: &[(usize, Span)]) -> DisjointChain {
    let mut members = members.to_vec();
    members.sort_by_key(|m| m.0);
    DisjointChain { members: members.into_iter().map(|(family, s)| ChainMember { family, body: span_body(s) }).collect() }
}

/// Heterochromatic chain of `m` pairwise-disjoint intervals, one from each
/// of `m` families with increasing indices.
pub fn heterochromatic_disjoint_intervals(families: &[Vec<Span>], m: usize) -> ChainOutcome {
    let mut b = Builder { families, target: m, nodes: 0 };
    let greedy = b.cascade();
    if greedy.len() >= m {
        return ChainOutcome::Chain { chain: checked(to_chain(&greedy[..m])) };
    }
    let mut chain = Vec::new();
    if b.search(0, &mut chain) {
        return ChainOutcome::Chain { chain: checked(to_chain(&chain)) };
    }
    let reason = if b.nodes > SEARCH_NODES {
        format!("search budget of {SEARCH_NODES} nodes exhausted")
    } else {
        format!("no heterochromatic disjoint selection of length {m} exists")
    };
    ChainOutcome::Stuck { best: to_chain(&greedy), reason }
}

fn checked(chain: DisjointChain) -> DisjointChain {
    assert!(chain.is_heterochromatic() && chain.is_pairwise_disjoint(), "builder produced an invalid chain");
    chain
}
