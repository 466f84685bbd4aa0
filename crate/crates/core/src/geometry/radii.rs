use serde::{Deserialize, Serialize};

use super::body::ConvexBody;
use super::planar::{half_planes, polygon_area};
use super::vector::{dist2, norm, Point, P2};
use crate::error::{Error, Result};

/// In-radius, out-radius and condition number of a convex body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiiReport {
    pub in_radius: f64,
    pub out_radius: f64,
    /// Center of a largest inscribed ball.
    pub in_center: Point,
    /// Center of the smallest enclosing ball.
    pub out_center: Point,
    pub sigma: f64,
}

fn report(in_radius: f64, in_center: Vec<f64>, out_radius: f64, out_center: Vec<f64>) -> Result<RadiiReport> {
    if !(in_radius > 0.0) {
        return Err(Error::DegenerateBody("in-radius is zero".into()));
    }
    Ok(RadiiReport {
        in_radius,
        out_radius,
        in_center: Point(in_center),
        out_center: Point(out_center),
        sigma: in_radius / out_radius,
    })
}

/// Radii of a body; `sigma = r_S / R_S`.
pub fn radii(body: &ConvexBody) -> Result<RadiiReport> {
    match body {
        ConvexBody::Ball { center, radius } => report(*radius, center.0.clone(), *radius, center.0.clone()),
        ConvexBody::Interval { lo, hi } => {
            let c = (lo + hi) / 2.0;
            report((hi - lo) / 2.0, vec![c], (hi - lo) / 2.0, vec![c])
        }
        ConvexBody::AxisBox { lo, hi } => {
            let sides: Vec<f64> = lo.0.iter().zip(&hi.0).map(|(a, b)| b - a).collect();
            let c: Vec<f64> = lo.0.iter().zip(&hi.0).map(|(a, b)| (a + b) / 2.0).collect();
            let r = sides.iter().copied().fold(f64::INFINITY, f64::min) / 2.0;
            report(r, c.clone(), norm(&sides) / 2.0, c)
        }
        ConvexBody::OrientedRect { center, hl, hw, .. } => report(hl.min(*hw), center.to_vec(), hl.hypot(*hw), center.to_vec()),
        ConvexBody::Triangle { .. } => {
            let v = body.polygon2().unwrap();
            let (a, b, c) = (dist2(v[1], v[2]), dist2(v[0], v[2]), dist2(v[0], v[1]));
            let s = (a + b + c) / 2.0;
            let area = polygon_area(&v).abs();
            let p = a + b + c;
            let incenter = vec![(a * v[0][0] + b * v[1][0] + c * v[2][0]) / p, (a * v[0][1] + b * v[1][1] + c * v[2][1]) / p];
            let (oc, or) = min_enclosing_circle(&v);
            report(area / s, incenter, or, oc.to_vec())
        }
        ConvexBody::Polygon { vertices } => {
            let (ic, ir) = largest_inscribed_circle(vertices);
            let (oc, or) = min_enclosing_circle(vertices);
            report(ir, ic.to_vec(), or, oc.to_vec())
        }
        ConvexBody::Lifted { .. } => Err(Error::DegenerateBody("lifted polygons have no interior in R^3".into())),
    }
}

/// Condition number of a family: the minimum over its members.
pub fn family_sigma(bodies: &[ConvexBody]) -> Result<f64> {
    if bodies.is_empty() {
        return Err(Error::EmptyInput);
    }
    bodies.iter().map(|b| radii(b).map(|r| r.sigma)).try_fold(f64::INFINITY, |m, s| s.map(|s| m.min(s)))
}

/// Chebyshev center of a convex polygon: maximizes `t` subject to
/// `n_e . x + t <= b_e`. The LP is pointed, so an optimal vertex is
/// determined by three tight edge constraints; all triples are enumerated.
pub fn largest_inscribed_circle(vertices: &[P2]) -> (P2, f64) {
    let planes = half_planes(vertices);
    let m = planes.len();
    let mut best = ([0.0, 0.0], f64::NEG_INFINITY);
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let rows = [planes[i], planes[j], planes[k]];
                let Some((x, t)) = solve3(&rows) else { continue };
                if t <= best.1 {
                    continue;
                }
                let feasible = planes.iter().all(|&(n, b)| n[0] * x[0] + n[1] * x[1] + t <= b + 1e-9 * (1.0 + b.abs()));
                if feasible {
                    best = (x, t);
                }
            }
        }
    }
    best
}

// Solves n_r . x + t = b_r for the three rows by Cramer's rule.
fn solve3(rows: &[(P2, f64); 3]) -> Option<(P2, f64)> {
    let a = |r: usize| [rows[r].0[0], rows[r].0[1], 1.0];
    let det3 = |c0: [f64; 3], c1: [f64; 3], c2: [f64; 3]| {
        c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
    };
    let col = |j: usize| [a(0)[j], a(1)[j], a(2)[j]];
    let rhs = [rows[0].1, rows[1].1, rows[2].1];
    let det = det3(col(0), col(1), col(2));
    if det.abs() < 1e-12 {
        return None;
    }
    let x = det3(rhs, col(1), col(2)) / det;
    let y = det3(col(0), rhs, col(2)) / det;
    let t = det3(col(0), col(1), rhs) / det;
    Some(([x, y], t))
}

/// Smallest enclosing circle of a planar point set (incremental
/// move-to-front construction, deterministic order).
pub fn min_enclosing_circle(points: &[P2]) -> (P2, f64) {
    let inside = |c: P2, r: f64, p: P2| dist2(c, p) <= r * (1.0 + 1e-12) + 1e-15;
    let mut c = points[0];
    let mut r = 0.0;
    for i in 1..points.len() {
        if inside(c, r, points[i]) {
            continue;
        }
        c = points[i];
        r = 0.0;
        for j in 0..i {
            if inside(c, r, points[j]) {
                continue;
            }
            c = [(points[i][0] + points[j][0]) / 2.0, (points[i][1] + points[j][1]) / 2.0];
            r = dist2(c, points[i]);
            for k in 0..j {
                if inside(c, r, points[k]) {
                    continue;
                }
                if let Some((cc, rr)) = circumcircle(points[i], points[j], points[k]) {
                    c = cc;
                    r = rr;
                }
            }
        }
    }
    (c, r)
}

fn circumcircle(a: P2, b: P2, c: P2) -> Option<(P2, f64)> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-300 {
        return None;
    }
    let (a2, b2, c2) = (a[0] * a[0] + a[1] * a[1], b[0] * b[0] + b[1] * b[1], c[0] * c[0] + c[1] * c[1]);
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    let center = [ux, uy];
    Some((center, dist2(center, a)))
}
