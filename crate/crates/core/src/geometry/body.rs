use serde::{Deserialize, Serialize};

use super::planar::{self, polygon_area};
use super::vector::{check_dim, cross2, dist, dot, norm, sub, sub2, to_p2, Point, P2};
use crate::error::{Error, Result};

/// A compact convex body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ConvexBody {
    Interval { lo: f64, hi: f64 },
    #[serde(rename = "box")]
    AxisBox { lo: Point, hi: Point },
    Ball { center: Point, radius: f64 },
    /// Rectangle in the plane with long axis `u`.
    #[serde(rename = "orect")]
    OrientedRect { center: P2, u: P2, hl: f64, hw: f64 },
    Triangle { vertices: [P2; 3] },
    /// Strictly convex polygon, counter-clockwise.
    Polygon { vertices: Vec<P2> },
    /// Planar convex polygon embedded in the horizontal plane `z` of `R^3`.
    Lifted { vertices: Vec<P2>, z: f64 },
}

fn finite(xs: impl IntoIterator<Item = f64>) -> bool {
    xs.into_iter().all(f64::is_finite)
}

impl ConvexBody {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        let b = ConvexBody::Interval { lo, hi };
        b.validate()?;
        Ok(b)
    }

    pub fn axis_box(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let b = ConvexBody::AxisBox { lo: Point(lo), hi: Point(hi) };
        b.validate()?;
        Ok(b)
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        let b = ConvexBody::Ball { center: Point(center), radius };
        b.validate()?;
        Ok(b)
    }

    pub fn oriented_rect(center: P2, u: P2, hl: f64, hw: f64) -> Result<Self> {
        let n = u[0].hypot(u[1]);
        if !(n > 1e-12) {
            return Err(Error::ZeroVector);
        }
        let b = ConvexBody::OrientedRect { center, u: [u[0] / n, u[1] / n], hl, hw };
        b.validate()?;
        Ok(b)
    }

    pub fn triangle(v1: P2, v2: P2, v3: P2) -> Result<Self> {
        let b = ConvexBody::Triangle { vertices: [v1, v2, v3] };
        b.validate()?;
        Ok(b)
    }

    pub fn polygon(vertices: Vec<P2>) -> Result<Self> {
        let b = ConvexBody::Polygon { vertices };
        b.validate()?;
        Ok(b)
    }

    pub fn lifted(vertices: Vec<P2>, z: f64) -> Result<Self> {
        let b = ConvexBody::Lifted { vertices, z };
        b.validate()?;
        Ok(b)
    }

    /// Checks the shape invariants. Degenerate shapes (zero in-radius) are
    /// rejected, except for `Lifted`, which is flat by definition.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidBody(m.to_string()));
        match self {
            ConvexBody::Interval { lo, hi } => {
                if !finite([*lo, *hi]) {
                    return bad("interval endpoints must be finite");
                }
                if lo > hi {
                    return bad("interval requires lo <= hi");
                }
                if lo == hi {
                    return Err(Error::DegenerateBody("interval has zero length".into()));
                }
            }
            ConvexBody::AxisBox { lo, hi } => {
                check_dim(lo.dim(), hi.dim())?;
                if lo.dim() == 0 || !finite(lo.0.iter().chain(&hi.0).copied()) {
                    return bad("box corners must be finite and non-empty");
                }
                if lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
                    return bad("box requires lo_i <= hi_i on every axis");
                }
                if lo.0.iter().zip(&hi.0).any(|(a, b)| a == b) {
                    return Err(Error::DegenerateBody("box has a zero-length side".into()));
                }
            }
            ConvexBody::Ball { center, radius } => {
                if center.dim() == 0 || !finite(center.0.iter().copied().chain([*radius])) {
                    return bad("ball must have a finite center and radius");
                }
                if !(*radius > 0.0) {
                    return Err(Error::DegenerateBody("ball radius must be positive".into()));
                }
            }
            ConvexBody::OrientedRect { center, u, hl, hw } => {
                if !finite([center[0], center[1], u[0], u[1], *hl, *hw]) {
                    return bad("rectangle fields must be finite");
                }
                if ((u[0].hypot(u[1])) - 1.0).abs() > 1e-9 {
                    return bad("rectangle axis must be a unit vector");
                }
                if !(*hl > 0.0 && *hw > 0.0) {
                    return Err(Error::DegenerateBody("rectangle half-extents must be positive".into()));
                }
            }
            ConvexBody::Triangle { vertices } => {
                if !finite(vertices.iter().flatten().copied()) {
                    return bad("triangle vertices must be finite");
                }
                if polygon_area(vertices).abs() <= 1e-12 {
                    return Err(Error::DegenerateBody("triangle area must exceed 1e-12".into()));
                }
            }
            ConvexBody::Polygon { vertices } | ConvexBody::Lifted { vertices, .. } => {
                if vertices.len() < 3 || !finite(vertices.iter().flatten().copied()) {
                    return bad("polygon needs at least three finite vertices");
                }
                let n = vertices.len();
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let c = vertices[(i + 2) % n];
                    if cross2(sub2(b, a), sub2(c, b)) <= 0.0 {
                        return bad("polygon must be strictly convex and counter-clockwise");
                    }
                }
                if let ConvexBody::Lifted { z, .. } = self {
                    if !z.is_finite() {
                        return bad("lifted polygon height must be finite");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Interval { .. } => 1,
            ConvexBody::AxisBox { lo, .. } => lo.dim(),
            ConvexBody::Ball { center, .. } => center.dim(),
            ConvexBody::OrientedRect { .. } | ConvexBody::Triangle { .. } | ConvexBody::Polygon { .. } => 2,
            ConvexBody::Lifted { .. } => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::Interval { .. } => "interval",
            ConvexBody::AxisBox { .. } => "box",
            ConvexBody::Ball { .. } => "ball",
            ConvexBody::OrientedRect { .. } => "orect",
            ConvexBody::Triangle { .. } => "triangle",
            ConvexBody::Polygon { .. } => "polygon",
            ConvexBody::Lifted { .. } => "lifted",
        }
    }

    pub fn as_ball(&self) -> Option<(&[f64], f64)> {
        match self {
            ConvexBody::Ball { center, radius } => Some((center.coords(), *radius)),
            _ => None,
        }
    }

    /// Per-axis bounds `(lo, hi)` for intervals and boxes.
    pub fn as_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            ConvexBody::Interval { lo, hi } => Some((vec![*lo], vec![*hi])),
            ConvexBody::AxisBox { lo, hi } => Some((lo.0.clone(), hi.0.clone())),
            _ => None,
        }
    }

    /// CCW vertex list for the planar polygonal shapes (for `Lifted`, the
    /// in-plane polygon).
    pub fn polygon2(&self) -> Option<Vec<P2>> {
        match self {
            ConvexBody::OrientedRect { center, u, hl, hw } => {
                let v = [-u[1], u[0]];
                let corner = |s: f64, t: f64| [center[0] + s * hl * u[0] + t * hw * v[0], center[1] + s * hl * u[1] + t * hw * v[1]];
                Some(vec![corner(-1.0, -1.0), corner(1.0, -1.0), corner(1.0, 1.0), corner(-1.0, 1.0)])
            }
            ConvexBody::Triangle { vertices } => {
                let mut v = vertices.to_vec();
                if polygon_area(&v) < 0.0 {
                    v.swap(1, 2);
                }
                Some(v)
            }
            ConvexBody::Polygon { vertices } | ConvexBody::Lifted { vertices, .. } => Some(vertices.clone()),
            ConvexBody::AxisBox { lo, hi } if lo.dim() == 2 => {
                Some(vec![[lo.0[0], lo.0[1]], [hi.0[0], lo.0[1]], [hi.0[0], hi.0[1]], [lo.0[0], hi.0[1]]])
            }
            _ => None,
        }
    }

    /// Vertex set of polytopal bodies (intervals, boxes, planar polygons,
    /// lifted polygons). `None` for balls.
    pub fn vertices(&self) -> Option<Vec<Vec<f64>>> {
        match self {
            ConvexBody::Interval { lo, hi } => Some(vec![vec![*lo], vec![*hi]]),
            ConvexBody::AxisBox { lo, hi } => {
                let d = lo.dim();
                Some(
                    (0..1usize << d)
                        .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { hi.0[i] } else { lo.0[i] }).collect())
                        .collect(),
                )
            }
            ConvexBody::Ball { .. } => None,
            ConvexBody::Lifted { vertices, z } => Some(vertices.iter().map(|v| vec![v[0], v[1], *z]).collect()),
            _ => Some(self.polygon2()?.into_iter().map(|v| v.to_vec()).collect()),
        }
    }

    /// Nearest point of the body to `p`.
    pub fn project(&self, p: &[f64]) -> Vec<f64> {
        match self {
            ConvexBody::Ball { center, radius } => {
                let d = dist(p, center.coords());
                if d <= *radius {
                    p.to_vec()
                } else {
                    center.0.iter().zip(p).map(|(c, x)| c + (x - c) * radius / d).collect()
                }
            }
            ConvexBody::Interval { .. } | ConvexBody::AxisBox { .. } => {
                let (lo, hi) = self.as_box().unwrap();
                p.iter().zip(lo.iter().zip(&hi)).map(|(x, (l, h))| x.clamp(*l, *h)).collect()
            }
            ConvexBody::Lifted { vertices, z } => {
                let q = planar::project_to_polygon(vertices, to_p2(p));
                vec![q[0], q[1], *z]
            }
            _ => planar::project_to_polygon(&self.polygon2().unwrap(), to_p2(p)).to_vec(),
        }
    }

    /// Signed distance (negative inside the interior) and a subgradient.
    /// Flat bodies have no interior, so their value is the plain distance.
    pub fn signed_distance(&self, p: &[f64]) -> (f64, Vec<f64>) {
        match self {
            ConvexBody::Ball { center, radius } => {
                let diff = sub(p, center.coords());
                let n = norm(&diff);
                let g = if n > 0.0 { diff.iter().map(|x| x / n).collect() } else { vec![0.0; p.len()] };
                (n - radius, g)
            }
            ConvexBody::Interval { .. } | ConvexBody::AxisBox { .. } => {
                let (lo, hi) = self.as_box().unwrap();
                let q: Vec<f64> = p.iter().zip(lo.iter().zip(&hi)).map(|(x, (l, h))| x.clamp(*l, *h)).collect();
                let diff = sub(p, &q);
                let n = norm(&diff);
                if n > 0.0 {
                    return (n, diff.iter().map(|x| x / n).collect());
                }
                let mut best = f64::NEG_INFINITY;
                let mut g = vec![0.0; p.len()];
                for i in 0..p.len() {
                    for (s, sign) in [(lo[i] - p[i], -1.0), (p[i] - hi[i], 1.0)] {
                        if s > best {
                            best = s;
                            g.iter_mut().for_each(|x| *x = 0.0);
                            g[i] = sign;
                        }
                    }
                }
                (best, g)
            }
            ConvexBody::Lifted { .. } => {
                let q = self.project(p);
                let diff = sub(p, &q);
                let n = norm(&diff);
                let g = if n > 0.0 { diff.iter().map(|x| x / n).collect() } else { vec![0.0; 3] };
                (n, g)
            }
            _ => {
                let (v, g) = planar::polygon_signed_distance(&self.polygon2().unwrap(), to_p2(p));
                (v, g.to_vec())
            }
        }
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        self.signed_distance(p).0 <= tol
    }

    /// Support function `max { <dir, x> : x in S }`.
    pub fn support(&self, dir: &[f64]) -> f64 {
        match self {
            ConvexBody::Ball { center, radius } => dot(center.coords(), dir) + radius * norm(dir),
            ConvexBody::Interval { .. } | ConvexBody::AxisBox { .. } => {
                let (lo, hi) = self.as_box().unwrap();
                dir.iter().zip(lo.iter().zip(&hi)).map(|(d, (l, h))| if *d >= 0.0 { d * h } else { d * l }).sum()
            }
            _ => self
                .vertices()
                .unwrap()
                .iter()
                .map(|v| dot(v, dir))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Interval `[min <dir,x>, max <dir,x>]` of the body's projection.
    pub fn projection_interval(&self, dir: &[f64]) -> (f64, f64) {
        let neg: Vec<f64> = dir.iter().map(|x| -x).collect();
        (-self.support(&neg), self.support(dir))
    }

    /// `sup { |x| : x in S }`, the norm of the farthest point from the origin.
    pub fn sup_norm(&self) -> f64 {
        match self {
            ConvexBody::Ball { center, radius } => center.norm() + radius,
            _ => self.vertices().unwrap().iter().map(|v| norm(v)).fold(0.0, f64::max),
        }
    }

    /// `inf { |x| : x in S }`.
    pub fn inf_norm(&self) -> f64 {
        let o = vec![0.0; self.dim()];
        norm(&self.project(&o))
    }

    /// A point of the body: the in-center when the body has one, otherwise
    /// the vertex centroid.
    pub fn representative_point(&self) -> Vec<f64> {
        match self {
            ConvexBody::Lifted { vertices, z } => {
                let n = vertices.len() as f64;
                let (sx, sy) = vertices.iter().fold((0.0, 0.0), |(a, b), v| (a + v[0], b + v[1]));
                vec![sx / n, sy / n, *z]
            }
            _ => super::radii::radii(self).map(|r| r.in_center.0).unwrap_or_else(|_| {
                let vs = self.vertices().unwrap_or_default();
                let n = vs.len().max(1) as f64;
                let d = self.dim();
                (0..d).map(|i| vs.iter().map(|v| v[i]).sum::<f64>() / n).collect()
            }),
        }
    }

    /// Axis-aligned bounding box.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.dim();
        let lo = (0..d).map(|i| {
            let mut e = vec![0.0; d];
            e[i] = -1.0;
            -self.support(&e)
        });
        let hi = (0..d).map(|i| {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            self.support(&e)
        });
        (lo.collect(), hi.collect())
    }
}

/// A piece of a non-convex compound body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Piece {
    Convex(ConvexBody),
    Polyline { polyline: Vec<P2> },
}

/// Finite union of convex bodies and planar polylines. Used for the
/// ball-with-tail construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompoundBody {
    pub pieces: Vec<Piece>,
}

impl CompoundBody {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let c = CompoundBody { pieces };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pieces.is_empty() {
            return Err(Error::InvalidBody("compound body needs at least one piece".into()));
        }
        for p in &self.pieces {
            match p {
                Piece::Convex(b) => b.validate()?,
                Piece::Polyline { polyline } => {
                    if polyline.len() < 2 || !finite(polyline.iter().flatten().copied()) {
                        return Err(Error::InvalidBody("polyline needs two or more finite vertices".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Segments of all polyline pieces.
    pub fn segments(&self) -> Vec<(P2, P2)> {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Polyline { polyline } => Some(polyline.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    pub fn convex_pieces(&self) -> impl Iterator<Item = &ConvexBody> {
        self.pieces.iter().filter_map(|p| match p {
            Piece::Convex(b) => Some(b),
            _ => None,
        })
    }

    pub fn contains(&self, p: P2, tol: f64) -> bool {
        self.convex_pieces().any(|b| b.contains(&p, tol)) || self.segments().iter().any(|&(a, b)| planar::dist_to_segment(p, a, b) <= tol)
    }
}

/// Either a convex body or a compound one; the element type of family files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyBody {
    Convex(ConvexBody),
    Compound(CompoundBody),
}

impl AnyBody {
    pub fn dim(&self) -> usize {
        match self {
            AnyBody::Convex(b) => b.dim(),
            AnyBody::Compound(_) => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AnyBody::Convex(b) => b.validate(),
            AnyBody::Compound(c) => c.validate(),
        }
    }

    pub fn as_convex(&self) -> Option<&ConvexBody> {
        match self {
            AnyBody::Convex(b) => Some(b),
            AnyBody::Compound(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_shapes_rejected() {
        assert!(ConvexBody::interval(1.0, 0.0).is_err());
        assert!(matches!(ConvexBody::ball(vec![0.0], 0.0), Err(Error::DegenerateBody(_))));
        assert!(ConvexBody::axis_box(vec![0.0, 0.0], vec![1.0, -1.0]).is_err());
        assert!(ConvexBody::triangle([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]).is_err());
        // clockwise square
        assert!(ConvexBody::polygon(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn box_signed_distance_inside_is_negative_clearance() {
        let b = ConvexBody::axis_box(vec![0.0, 0.0], vec![2.0, 4.0]).unwrap();
        assert!((b.signed_distance(&[1.0, 1.0]).0 + 1.0).abs() < 1e-15);
        assert!((b.signed_distance(&[3.0, 5.0]).0 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn json_tags_follow_family_schema() {
        let b = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"type":"ball","center":[0.0,0.0],"radius":1.0}"#);
        let r = ConvexBody::oriented_rect([0.0, 0.0], [1.0, 0.0], 2.0, 1.0).unwrap();
        assert!(serde_json::to_string(&r).unwrap().starts_with(r#"{"type":"orect","center""#));
        let back: ConvexBody = serde_json::from_str(r#"{"type":"box","lo":[0,0],"hi":[1,1]}"#).unwrap();
        assert_eq!(back, ConvexBody::axis_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
    }

    #[test]
    fn rect_corners_are_ccw() {
        let r = ConvexBody::oriented_rect([1.0, 1.0], [0.0, 1.0], 2.0, 0.5).unwrap();
        let v = r.polygon2().unwrap();
        assert!(polygon_area(&v) > 0.0);
        assert!((polygon_area(&v) - 4.0).abs() < 1e-12);
    }
}
