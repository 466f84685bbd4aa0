use serde::{Deserialize, Serialize};

use super::vector::{axpy, check_dim, dot, norm, sub, Direction, Point};
use crate::error::{Error, Result};

/// An affine k-dimensional subspace: `base + span(basis)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KFlat {
    base: Point,
    basis: Vec<Direction>,
}

impl KFlat {
    /// Builds a flat from an orthonormal basis. The Gram matrix must be
    /// within `1e-9` of the identity and `k <= d - 1`.
    pub fn new(base: Point, basis: Vec<Direction>) -> Result<Self> {
        let d = base.dim();
        if basis.len() >= d {
            return Err(Error::InvalidK { k: basis.len(), d });
        }
        for b in &basis {
            check_dim(d, b.dim())?;
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let g = dot(a.coords(), b.coords());
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - want).abs() > 1e-9 {
                    return Err(Error::InvalidFlat(format!("basis is not orthonormal (gram[{i}][{j}] = {g})")));
                }
            }
        }
        Ok(KFlat { base, basis })
    }

    /// Orthonormalizes `spanning` by Gram-Schmidt; the vectors must be independent.
    pub fn from_spanning(base: Point, spanning: &[Vec<f64>]) -> Result<Self> {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for v in spanning {
            check_dim(base.dim(), v.len())?;
            let mut w = v.clone();
            // two passes keep the result orthogonal to 1e-15 for ill-conditioned input
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&w, b);
                    w = axpy(&w, -c, b);
                }
            }
            let n = norm(&w);
            if n < 1e-12 {
                return Err(Error::InvalidFlat("spanning vectors are linearly dependent".into()));
            }
            basis.push(w.iter().map(|x| x / n).collect());
        }
        let basis = basis.into_iter().map(Direction::new).collect::<Result<Vec<_>>>()?;
        KFlat::new(base, basis)
    }

    pub fn point(p: Point) -> Self {
        KFlat { base: p, basis: Vec::new() }
    }

    /// Line through `base` with direction `dir`.
    pub fn line(base: Point, dir: Direction) -> Result<Self> {
        KFlat::new(base, vec![dir])
    }

    /// Flat through `base` spanned by the given coordinate axes.
    pub fn axis_parallel(base: Point, axes: &[usize]) -> Result<Self> {
        let d = base.dim();
        let basis = axes.iter().map(|&a| Direction::axis(d, a)).collect();
        KFlat::new(base, basis)
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn basis(&self) -> &[Direction] {
        &self.basis
    }

    /// Orthogonal projection of `p` onto the flat.
    pub fn project(&self, p: &[f64]) -> Vec<f64> {
        let rel = sub(p, self.base.coords());
        let mut q = self.base.0.clone();
        for b in &self.basis {
            let c = dot(&rel, b.coords());
            q = axpy(&q, c, b.coords());
        }
        q
    }

    /// Component of `v` orthogonal to the flat's direction space.
    pub fn reject(&self, v: &[f64]) -> Vec<f64> {
        let mut w = v.to_vec();
        for b in &self.basis {
            let c = dot(v, b.coords());
            w = axpy(&w, -c, b.coords());
        }
        w
    }

    /// Returns the axes spanned by this flat if every basis vector is a signed
    /// coordinate axis.
    pub fn coordinate_axes(&self) -> Option<Vec<usize>> {
        let mut axes = Vec::with_capacity(self.k());
        for b in &self.basis {
            let c = b.coords();
            let (idx, big) = c
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))?;
            if (big.abs() - 1.0).abs() > 1e-12 {
                return None;
            }
            if c.iter().enumerate().any(|(i, x)| i != idx && x.abs() > 1e-12) {
                return None;
            }
            axes.push(idx);
        }
        Some(axes)
    }
}

/// Euclidean distance from `p` to the affine flat `flat`.
pub fn dist_point_flat(p: &Point, flat: &KFlat) -> Result<f64> {
    check_dim(flat.dim(), p.dim())?;
    let rel = sub(p.coords(), flat.base.coords());
    Ok(norm(&flat.reject(&rel)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_axis2() -> KFlat {
        KFlat::line(Point(vec![0.0, 0.0]), Direction::axis(2, 0)).unwrap()
    }

    #[test]
    fn point_on_flat_has_zero_distance() {
        assert_eq!(dist_point_flat(&Point(vec![0.0, 0.0]), &x_axis2()).unwrap(), 0.0);
        assert_eq!(dist_point_flat(&Point(vec![0.0, 3.0]), &x_axis2()).unwrap(), 3.0);
    }

    #[test]
    fn distance_to_line_in_r3_matches_grid_search() {
        let p = Point(vec![1.0, 1.0, 1.0]);
        let flat = KFlat::line(Point::origin(3), Direction::axis(3, 0)).unwrap();
        let exact = dist_point_flat(&p, &flat).unwrap();
        // oracle: minimize |p - t e1| over a grid of 10^4 values of t in [-5, 5]
        let grid = (0..10_000)
            .map(|i| -5.0 + 10.0 * i as f64 / 9_999.0)
            .map(|t| ((1.0 - t).powi(2) + 2.0).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert!((exact - 2f64.sqrt()).abs() < 1e-12);
        assert!((grid - exact).abs() < 1e-6);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = dist_point_flat(&Point(vec![0.0, 0.0, 0.0]), &x_axis2()).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn non_orthonormal_basis_rejected() {
        let b = vec![Direction::axis(3, 0), Direction::new(vec![1.0, 1.0, 0.0]).unwrap()];
        assert!(KFlat::new(Point::origin(3), b).is_err());
        let ok = KFlat::from_spanning(Point::origin(3), &[vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 0.0]]).unwrap();
        assert_eq!(ok.k(), 2);
    }

    #[test]
    fn k_must_be_below_d() {
        let b = vec![Direction::axis(2, 0), Direction::axis(2, 1)];
        assert!(matches!(KFlat::new(Point::origin(2), b), Err(Error::InvalidK { .. })));
    }
}
