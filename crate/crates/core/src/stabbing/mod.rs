//! Interval and box stabbing, the disjoint-chain exchange steps, the
//! heterochromatic chain builders and an exact small-instance piercing
//! number solver.

mod boxes;
mod intervals;
mod piercing;

use serde::{Deserialize, Serialize};

use crate::geometry::ConvexBody;

pub use boxes::{box_point_transversal, boxes_disjoint, heterochromatic_disjoint_boxes, BoxOutcome};
pub use intervals::{
    extend_disjoint_chain, find_nested_disjoint_pair, heterochromatic_disjoint_intervals, max_disjoint_intervals,
    min_point_stab_intervals, ChainStep, NestedPair, Span,
};
pub use piercing::{min_piercing_number, PiercingSolution, PIERCING_LIMIT};

/// Bodies are disjoint when their distance exceeds this.
pub const DISJOINT_TOL: f64 = 1e-9;

/// A piercing point set with, for each input body, the index of a point
/// inside it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabResult {
    pub points: Vec<Vec<f64>>,
    pub covered: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainMember {
    pub family: usize,
    pub body: ConvexBody,
}

/// Pairwise-disjoint bodies, one per listed family.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DisjointChain {
    pub members: Vec<ChainMember>,
}

impl DisjointChain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn families(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.family).collect()
    }

    /// Family indices strictly increase.
    pub fn is_heterochromatic(&self) -> bool {
        self.members.windows(2).all(|w| w[0].family < w[1].family)
    }

    /// Every pair is at distance greater than [`DISJOINT_TOL`].
    pub fn is_pairwise_disjoint(&self) -> bool {
        let bodies: Vec<&ConvexBody> = self.members.iter().map(|m| &m.body).collect();
        bodies.iter().enumerate().all(|(i, a)| bodies[i + 1..].iter().all(|b| bodies_disjoint(a, b)))
    }
}

/// Outcome of a chain builder that may run out of moves on finite input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ChainOutcome {
    Chain { chain: DisjointChain },
    Stuck { best: DisjointChain, reason: String },
}

impl ChainOutcome {
    pub fn chain(&self) -> Option<&DisjointChain> {
        match self {
            ChainOutcome::Chain { chain } => Some(chain),
            ChainOutcome::Stuck { .. } => None,
        }
    }
}

/// Disjointness of two closed convex bodies, decided exactly for the
/// shapes used here (intervals, boxes, balls, planar polygons) and by a
/// common-point search otherwise.
pub fn bodies_disjoint(a: &ConvexBody, b: &ConvexBody) -> bool {
    if let (Some(x), Some(y)) = (a.as_box(), b.as_box()) {
        return boxes_disjoint(&x, &y);
    }
    if let (Some((c1, r1)), Some((c2, r2))) = (a.as_ball(), b.as_ball()) {
        return crate::geometry::vector::dist(c1, c2) - r1 - r2 > DISJOINT_TOL;
    }
    if let (Some(p), Some(q)) = (a.polygon2(), b.polygon2()) {
        if a.dim() == 2 && b.dim() == 2 {
            return crate::geometry::planar::separation(&p, &q) > DISJOINT_TOL;
        }
    }
    match crate::transversal::common_point(&[a.clone(), b.clone()]) {
        Ok(ans) => !ans.is_pierced(),
        Err(_) => false,
    }
}
