//! Limiting-direction estimates from far sample points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::vector::{axpy, dist, dot, norm, scale};
use crate::geometry::{ConvexBody, Direction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LdsEstimate {
    /// Cluster seed directions with the number of samples in each.
    pub clusters: Vec<(Direction, usize)>,
    pub span_dim: usize,
}

impl LdsEstimate {
    /// The far directions span at least `k` dimensions.
    pub fn k_unbounded(&self, k: usize) -> bool {
        self.span_dim >= k
    }
}

/// Rank of a set of vectors by Gram-Schmidt at tolerance `tol`.
fn rank(vs: &[Vec<f64>], tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &basis {
            w = axpy(&w, -dot(&w, b), b);
        }
        let n = norm(&w);
        if n > tol {
            basis.push(scale(&w, 1.0 / n));
        }
    }
    basis.len()
}

/// Clusters the central projections of samples with norm at least
/// `threshold` into a greedy `radius`-net on the sphere.
pub fn lds_estimate(samples: &[Vec<f64>], threshold: f64, radius: f64) -> Result<LdsEstimate> {
    let far: Vec<Vec<f64>> = samples.iter().filter(|s| norm(s) >= threshold).map(|s| scale(s, 1.0 / norm(s))).collect();
    if far.is_empty() {
        return Err(Error::NoFarSamples);
    }
    let mut clusters: Vec<(Vec<f64>, usize)> = Vec::new();
    for u in far {
        match clusters.iter_mut().find(|(c, _)| dist(c, &u) <= radius) {
            Some(c) => c.1 += 1,
            None => clusters.push((u, 1)),
        }
    }
    let span_dim = rank(&clusters.iter().map(|c| c.0.clone()).collect::<Vec<_>>(), 1e-6);
    let clusters = clusters.into_iter().map(|(c, n)| Ok((Direction::new(c)?, n))).collect::<Result<_>>()?;
    Ok(LdsEstimate { clusters, span_dim })
}

/// [`lds_estimate`] on the in-centers of `bodies`.
pub fn lds_of_bodies(bodies: &[ConvexBody], threshold: f64, radius: f64) -> Result<LdsEstimate> {
    let samples: Vec<Vec<f64>> = bodies.iter().map(|b| b.representative_point()).collect();
    lds_estimate(&samples, threshold, radius)
}
