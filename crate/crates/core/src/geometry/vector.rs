use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when checking that a direction has unit length.
pub const UNIT_TOL: f64 = 1e-12;

/// A point of `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidBody("point must have at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidBody("point coordinates must be finite".into()));
        }
        Ok(Point(coords))
    }

    pub fn origin(d: usize) -> Self {
        Point(vec![0.0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point(p.to_vec())
    }
}

impl From<[f64; 3]> for Point {
    fn from(p: [f64; 3]) -> Self {
        Point(p.to_vec())
    }
}

/// A unit vector of `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Normalizes `v`; fails on vectors shorter than `1e-12`.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let n = norm(&v);
        if !(n > 1e-12) || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Direction(v.into_iter().map(|x| x / n).collect()))
    }

    pub fn axis(d: usize, i: usize) -> Self {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        Direction(v)
    }

    pub fn from_angle(phi: f64) -> Self {
        Direction(vec![phi.cos(), phi.sin()])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(de)?;
        let n = norm(&v);
        if (n - 1.0).abs() > 1e-9 {
            return Err(serde::de::Error::custom(format!("direction has norm {n}, expected 1")));
        }
        Direction::new(v).map_err(serde::de::Error::custom)
    }
}

/// Central projection of `x` onto the unit sphere.
pub fn central_projection(x: &Point) -> Result<Direction> {
    Direction::new(x.0.clone())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

// Small fixed-size helpers for the planar routines.

pub type P2 = [f64; 2];

#[inline]
pub fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn add2(a: P2, b: P2) -> P2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn scale2(a: P2, s: f64) -> P2 {
    [a[0] * s, a[1] * s]
}

#[inline]
pub fn dot2(a: P2, b: P2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross2(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn norm2(a: P2) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub fn dist2(a: P2, b: P2) -> f64 {
    norm2(sub2(a, b))
}

pub fn to_p2(p: &[f64]) -> P2 {
    [p[0], p[1]]
}
