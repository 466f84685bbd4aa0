//! Piercing predicates and common-transversal feasibility.
//!
//! Answers are three-valued. `Empty { certified: true }` only comes from
//! the exact procedures (axis boxes, pair-separated balls, planar
//! candidate checks, the planar line sweep and the lifted-triple test);
//! the frame search can find witnesses but never certifies emptiness.

mod flats;
pub(crate) mod line2d;
mod point;
mod subsets;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dist_body_flat, ConvexBody, KFlat};

pub use flats::{axis_flat_transversal, flat_transversal, DEFAULT_BUDGET};
pub use line2d::{line_transversal_2d, offset_gap};
pub use point::common_point;
pub use subsets::{has_pq_property, is_k_dependent, is_k_dependent_with, PqReport};

/// Values at or below this are accepted as pierced.
pub const ACCEPT_TOL: f64 = 1e-9;
/// Values above this are rejected; values in between are unknown.
pub const REJECT_TOL: f64 = 1e-6;
/// Tolerance for re-verifying a witness against a body.
pub const WITNESS_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pierced { witness: KFlat },
    Empty { certified: bool },
    Unknown,
}

/// Decision procedure that produced an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// At most k+1 bodies: a flat through one point of each.
    Trivial,
    AxisBoxes,
    BallPairs,
    PlanarCandidates,
    Subgradient,
    LineSweep,
    LiftedTriple,
    FrameSearch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalAnswer {
    #[serde(flatten)]
    pub status: Status,
    pub method: Method,
}

impl TransversalAnswer {
    pub fn is_pierced(&self) -> bool {
        matches!(self.status, Status::Pierced { .. })
    }

    pub fn is_certified_empty(&self) -> bool {
        matches!(self.status, Status::Empty { certified: true })
    }

    pub fn witness(&self) -> Option<&KFlat> {
        match &self.status {
            Status::Pierced { witness } => Some(witness),
            _ => None,
        }
    }

    fn empty(certified: bool, method: Method) -> Self {
        TransversalAnswer { status: Status::Empty { certified }, method }
    }

    fn unknown(method: Method) -> Self {
        TransversalAnswer { status: Status::Unknown, method }
    }

    /// Wraps a witness after re-checking it against every body; a witness
    /// that fails is reported as unknown instead.
    fn pierced(witness: KFlat, bodies: &[ConvexBody], method: Method) -> Self {
        let ok = bodies
            .iter()
            .all(|b| dist_body_flat(b, &witness).map(|d| d <= WITNESS_TOL).unwrap_or(false));
        debug_assert!(ok, "witness from {method:?} failed re-verification");
        if ok {
            TransversalAnswer { status: Status::Pierced { witness }, method }
        } else {
            Self::unknown(method)
        }
    }

    /// Applies the tolerance ladder to an optimized value.
    fn from_value(value: f64, witness: impl FnOnce() -> Result<KFlat>, bodies: &[ConvexBody], certify: bool, method: Method) -> Result<Self> {
        Ok(if value <= ACCEPT_TOL {
            Self::pierced(witness()?, bodies, method)
        } else if value > REJECT_TOL {
            Self::empty(certify, method)
        } else {
            Self::unknown(method)
        })
    }
}

/// Flat + the k+2 sequence positions (0-based, increasing) it pierces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DependenceCertificate {
    pub indices: Vec<usize>,
    pub flat: KFlat,
}

impl DependenceCertificate {
    /// Re-checks the certificate against `sequence`.
    pub fn verify(&self, sequence: &[ConvexBody]) -> bool {
        self.indices.windows(2).all(|w| w[0] < w[1])
            && self.indices.iter().all(|&i| {
                i < sequence.len() && dist_body_flat(&sequence[i], &self.flat).map(|d| d <= WITNESS_TOL).unwrap_or(false)
            })
    }
}

/// `dist(S, K) <= 1e-9`.
pub fn pierces(flat: &KFlat, body: &ConvexBody) -> Result<bool> {
    Ok(dist_body_flat(body, flat)? <= ACCEPT_TOL)
}

pub(crate) fn shared_dim(bodies: &[ConvexBody]) -> Result<usize> {
    let d = bodies.first().ok_or(Error::EmptyInput)?.dim();
    for b in bodies {
        if b.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
        }
    }
    Ok(d)
}

/// Common k-flat search, dispatching to the best available procedure.
pub fn transversal(k: usize, bodies: &[ConvexBody], budget: usize) -> Result<TransversalAnswer> {
    if k == 0 {
        common_point(bodies)
    } else {
        flat_transversal(k, bodies, budget)
    }
}
