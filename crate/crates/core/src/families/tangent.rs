//! Rectangles and right triangles tangent to the unit circle, their lifts
//! to `R^3`, and the escape procedure against finite point sets.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::planar::separation;
use crate::geometry::vector::{add2, dist2, dot2, norm2, scale2, sub2, P2};
use crate::geometry::{dist_point_body, ConvexBody};

/// Indices of `B_n^(i)`: tangent point `u_n` at angle `pi / 2^n`,
/// thickness `1 / 2^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TangentIndex {
    pub n: u32,
    pub i: u32,
}

impl TangentIndex {
    pub fn new(n: u32, i: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateIndex(n as i64));
        }
        if i < 1 {
            return Err(Error::DegenerateIndex(i as i64));
        }
        Ok(TangentIndex { n, i })
    }

    pub fn theta(&self) -> f64 {
        PI / 2f64.powi(self.n as i32)
    }

    pub fn u(&self) -> P2 {
        let t = self.theta();
        [t.cos(), t.sin()]
    }

    /// Tangent line at `u_n` meets `x2 = 1` here. `(1 - sin t) / cos t` is
    /// evaluated as `tan(pi/4 - t/2)` to keep digits for large `n`.
    pub fn a(&self) -> P2 {
        [(FRAC_PI_4 - self.theta() / 2.0).tan(), 1.0]
    }

    /// Tangent line at `u_n` meets `x1 = 1` here; `(1 - cos t) / sin t = tan(t/2)`.
    pub fn b(&self) -> P2 {
        [1.0, (self.theta() / 2.0).tan()]
    }

    pub fn width(&self) -> f64 {
        0.5f64.powi(self.i as i32)
    }
}

/// `B_n^(i)`: the segment `s_n = [a_n, b_n]` swept outward along `u_n` by
/// `1 / 2^i`.
pub fn gen_tangent_rect(idx: TangentIndex) -> Result<ConvexBody> {
    let idx = TangentIndex::new(idx.n, idx.i)?;
    let (a, b, u, w) = (idx.a(), idx.b(), idx.u(), idx.width());
    let mid = scale2(add2(a, b), 0.5);
    ConvexBody::oriented_rect(add2(mid, scale2(u, w / 2.0)), sub2(b, a), dist2(a, b) / 2.0, w / 2.0)
}

/// Right triangle with legs `s_n` and `[a_n, a_n + u_n / 2^i]`.
pub fn gen_right_triangles(n: u32, i: u32) -> Result<ConvexBody> {
    let idx = TangentIndex::new(n, i)?;
    let (a, b) = (idx.a(), idx.b());
    let c = add2(a, scale2(idx.u(), idx.width()));
    // counter-clockwise: b, c, a
    ConvexBody::triangle(b, c, a)
}

/// `B_n^(i)` placed in the horizontal plane `z = n` of `R^3`.
pub fn gen_lifted_rect(n: u32, i: u32) -> Result<ConvexBody> {
    let rect = gen_tangent_rect(TangentIndex::new(n, i)?)?;
    ConvexBody::lifted(rect.polygon2().expect("rectangles are polygons"), n as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub pairs_checked: usize,
    pub failures: Vec<(TangentIndex, TangentIndex)>,
}

/// Separating-axis check over every pair of generated shapes; pairs whose
/// separation exceeds `1e-9` are failures.
fn pairwise(indices: &[TangentIndex], make: impl Fn(TangentIndex) -> Result<ConvexBody>) -> Result<IntersectionReport> {
    let polys: Vec<Vec<P2>> = indices.iter().map(|&s| Ok(make(s)?.polygon2().expect("planar polygon"))).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            pairs_checked += 1;
            if separation(&polys[i], &polys[j]) > 1e-9 {
                failures.push((indices[i], indices[j]));
            }
        }
    }
    Ok(IntersectionReport { pairs_checked, failures })
}

fn grid(ns: std::ops::RangeInclusive<u32>, is: std::ops::RangeInclusive<u32>) -> Result<Vec<TangentIndex>> {
    let mut out = Vec::new();
    for n in ns {
        for i in is.clone() {
            out.push(TangentIndex::new(n, i)?);
        }
    }
    Ok(out)
}

/// Pairwise intersection of all tangent rectangles with indices in range.
pub fn verify_pairwise_intersection(ns: std::ops::RangeInclusive<u32>, is: std::ops::RangeInclusive<u32>) -> Result<IntersectionReport> {
    pairwise(&grid(ns, is)?, gen_tangent_rect)
}

/// Same check for the right triangles.
pub fn verify_triangle_intersections(ns: std::ops::RangeInclusive<u32>, is: std::ops::RangeInclusive<u32>) -> Result<IntersectionReport> {
    pairwise(&grid(ns, is)?, |s| gen_right_triangles(s.n, s.i))
}

/// A member of the tangent family missed by a finite point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EscapeCertificate {
    pub n0: u32,
    pub i0: u32,
    /// Distance from the off-line points to `x1 = 1` (infinite when none).
    pub delta: f64,
    /// Distance from the on-line points other than `b` to `b`.
    pub lambda: f64,
    /// Distance from the on-line point nearest `b` to the tangent at `u_n0`.
    pub clearance: f64,
    pub rect: ConvexBody,
    /// Smallest distance from the rectangle to an input point.
    pub margin: f64,
}

const B: P2 = [1.0, 0.0];
const MAX_N: u32 = 1000;

fn margin(rect: &ConvexBody, points: &[P2]) -> f64 {
    points.iter().map(|p| dist_point_body(p, rect).expect("planar")).fold(f64::INFINITY, f64::min)
}

/// Finds `B_n0^(i0)` disjoint from `points`.
///
/// Points are normalized first: negative ones are dropped, coordinates
/// above 1 clamped, points inside the open unit disk dropped, and the
/// corners `(0,1)`, `(1,0)`, `(1,1)` added. Then `n0` is the least index
/// with `|a_n0 - c| < delta` and `|b_n0 - b| < lambda`, and `i0` the least
/// with `1/2^i0` below the clearance. The result is checked against the
/// original points; if clamping let one of them in, thinner and steeper
/// rectangles are tried in order of `n0 + i0`.
pub fn escape_rectangle(points: &[P2]) -> Result<EscapeCertificate> {
    let mut c: Vec<P2> = points
        .iter()
        .filter(|p| p[0] >= 0.0 && p[1] >= 0.0)
        .map(|p| [p[0].min(1.0), p[1].min(1.0)])
        .filter(|p| norm2(*p) >= 1.0)
        .collect();
    c.extend([[0.0, 1.0], B, [1.0, 1.0]]);
    let (c1, c2): (Vec<P2>, Vec<P2>) = c.iter().partition(|p| p[0] == 1.0);
    let delta = c2.iter().map(|p| 1.0 - p[0]).fold(f64::INFINITY, f64::min);
    let others: Vec<P2> = c1.iter().copied().filter(|&p| p != B).collect();
    let q1 = *others.iter().min_by(|p, q| dist2(**p, B).total_cmp(&dist2(**q, B))).expect("c is on the line");
    let lambda = dist2(q1, B);

    let n0 = (2..=MAX_N)
        .find(|&n| {
            let s = TangentIndex { n, i: 1 };
            dist2(s.a(), [1.0, 1.0]) < delta && dist2(s.b(), B) < lambda
        })
        .ok_or_else(|| Error::VerificationFailed("no tangent index within reach".into()))?;
    let idx = TangentIndex { n: n0, i: 1 };
    let clearance = (dot2(q1, idx.u()) - 1.0).abs();
    let i0 = (1..=MAX_N).find(|&i| 0.5f64.powi(i as i32) < clearance).ok_or_else(|| Error::VerificationFailed("no thickness index".into()))?;

    for total in n0 + i0..=2 * MAX_N {
        for n in n0..=total - i0 {
            let i = total - n;
            let rect = gen_tangent_rect(TangentIndex { n, i })?;
            let m = margin(&rect, points);
            if m > 0.0 {
                return Ok(EscapeCertificate { n0: n, i0: i, delta, lambda, clearance, rect, margin: m });
            }
        }
    }
    Err(Error::VerificationFailed("no escaping rectangle found".into()))
}
