//! Cones and the near/far ray regions used by the sequence constructions.

use serde::{Deserialize, Serialize};

use super::body::ConvexBody;
use super::vector::{check_dim, dist, dot, norm, sub, Direction, Point};
use crate::error::{Error, Result};

/// Closed circular cone `{x : angle(x - apex, axis) <= half_angle}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub apex: Point,
    pub axis: Direction,
    pub half_angle: f64,
}

impl Cone {
    pub fn new(apex: Point, axis: Direction, half_angle: f64) -> Result<Self> {
        check_dim(apex.dim(), axis.dim())?;
        if !(half_angle > 0.0 && half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::PrereqViolated(format!("cone half-angle {half_angle} outside (0, pi/2)")));
        }
        Ok(Cone { apex, axis, half_angle })
    }

    /// Signed clearance of a point: distance to the lateral boundary when
    /// inside (positive), negative when outside.
    fn clearance(&self, p: &[f64]) -> f64 {
        circular_cone_clearance(self.apex.coords(), self.axis.coords(), self.half_angle, p)
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        self.clearance(p) >= -1e-9 * (1.0 + dist(p, self.apex.coords()))
    }
}

// Clearance of p in the cone with apex a, unit axis v and half-angle alpha.
fn circular_cone_clearance(apex: &[f64], axis: &[f64], alpha: f64, p: &[f64]) -> f64 {
    let rel = sub(p, apex);
    let along = dot(&rel, axis);
    let len = norm(&rel);
    if len == 0.0 {
        return 0.0;
    }
    let perp = (len * len - along * along).max(0.0).sqrt();
    let beta = perp.atan2(along);
    len * (alpha - beta).sin().min(1.0)
}

/// True iff every point of `body` lies in the cone. Balls are decided in
/// closed form, polytopes on their vertices.
pub fn cone_contains(cone: &Cone, body: &ConvexBody) -> Result<bool> {
    check_dim(cone.apex.dim(), body.dim())?;
    if let Some((c, r)) = body.as_ball() {
        let clear = cone.clearance(c);
        return Ok(clear > 0.0 && clear >= r);
    }
    let vs = body.vertices().expect("non-ball bodies are polytopes");
    Ok(vs.iter().all(|v| cone.contains_point(v)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    /// `cone(r, 1/n) ∩ B(p, 1/n)`
    Near,
    /// `cone(r, 1/n) \ B(p, n)`
    Far,
}

/// Region around the ray `{p + t v : t >= 0}` where
/// `cone(r, t) = {x : dist(x, ray) <= t |x - p|}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayRegion {
    pub origin: Point,
    pub dir: Direction,
    pub n: u32,
    pub kind: RegionKind,
}

impl RayRegion {
    pub fn new(origin: Point, dir: Direction, n: u32, kind: RegionKind) -> Result<Self> {
        check_dim(origin.dim(), dir.dim())?;
        if n == 0 {
            return Err(Error::PrereqViolated("ray region index n must be >= 1".into()));
        }
        Ok(RayRegion { origin, dir, n, kind })
    }

    fn ratio(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Membership of a single point in `cone(r, 1/n)`.
    pub fn in_cone(&self, x: &[f64]) -> bool {
        let rel = sub(x, self.origin.coords());
        let len = norm(&rel);
        let t = dot(&rel, self.dir.coords());
        let to_ray = if t <= 0.0 { len } else { (len * len - t * t).max(0.0).sqrt() };
        to_ray <= self.ratio() * len + 1e-12 * (1.0 + len)
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        let r = dist(x, self.origin.coords());
        let radial = match self.kind {
            RegionKind::Near => r <= self.ratio(),
            RegionKind::Far => r > self.n as f64,
        };
        radial && self.in_cone(x)
    }
}

/// True iff the whole body lies in the ray region.
pub fn ray_region_contains(region: &RayRegion, body: &ConvexBody) -> Result<bool> {
    check_dim(region.origin.dim(), body.dim())?;
    let p = region.origin.coords();
    let t = region.ratio();
    let radial_ok = match region.kind {
        RegionKind::Near => {
            let far = match body.as_ball() {
                Some((c, r)) => dist(c, p) + r,
                None => body.vertices().unwrap().iter().map(|v| dist(v, p)).fold(0.0, f64::max),
            };
            far <= t
        }
        RegionKind::Far => dist(p, &body.project(p)) > region.n as f64,
    };
    if !radial_ok {
        return Ok(false);
    }
    // cone(r, t) is all of R^d for t >= 1 and the circular cone of
    // half-angle asin(t) around the ray otherwise.
    if t >= 1.0 {
        return Ok(true);
    }
    let alpha = t.asin();
    match body.as_ball() {
        Some((c, r)) => {
            let clear = circular_cone_clearance(p, region.dir.coords(), alpha, c);
            Ok(clear > 0.0 && clear >= r)
        }
        None => Ok(body.vertices().unwrap().iter().all(|v| region.in_cone(v))),
    }
}

/// `m(n) = ceil(2 sigma (2^n + 2 sigma))`, evaluated as printed.
pub fn m_growth(n: u32, sigma: f64) -> Result<u64> {
    if n == 0 || n > 60 {
        return Err(Error::PrereqViolated(format!("m_growth needs 1 <= n <= 60, got {n}")));
    }
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::PrereqViolated(format!("m_growth needs sigma in (0, 1], got {sigma}")));
    }
    let v = 2.0 * sigma * ((1u64 << n) as f64 + 2.0 * sigma);
    Ok(v.ceil() as u64)
}
