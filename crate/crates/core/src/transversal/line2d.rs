//! Exact line transversals in the plane.
//!
//! A line with direction angle `phi` and unit normal
//! `n(phi) = (-sin phi, cos phi)` meets body `i` iff its offset lies in the
//! projection `[lo_i(phi), hi_i(phi)]`. A common line exists iff
//! `g(phi) = max_{i != j} (lo_i - hi_j) <= 0` for some `phi`.
//!
//! Each `lo_i - hi_j` is a minimum of sinusoids `<n, p - q> - r_p - r_q`
//! over disk centers and polygon vertices `p` of `i`, `q` of `j`, so `g` is
//! piecewise a single sinusoid. Its minimum sits at a crossing of two such
//! terms or at a stationary angle of one; all of these have closed forms.

use std::f64::consts::PI;

use super::{shared_dim, Method, TransversalAnswer, ACCEPT_TOL, REJECT_TOL};
use crate::error::{Error, Result};
use crate::geometry::vector::{to_p2, P2};
use crate::geometry::{ConvexBody, Direction, KFlat, Point};

fn normal(phi: f64) -> [f64; 2] {
    [-phi.sin(), phi.cos()]
}

/// Sites `(point, radius)` whose sinusoids describe the body's projections.
fn sites(b: &ConvexBody) -> Result<Vec<(P2, f64)>> {
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: b.dim() });
    }
    if let Some((c, r)) = b.as_ball() {
        return Ok(vec![(to_p2(c), r)]);
    }
    match b.polygon2() {
        Some(v) => Ok(v.into_iter().map(|p| (p, 0.0)).collect()),
        None => Err(Error::Unsupported(format!("line sweep does not handle {} bodies", b.kind()))),
    }
}

fn intervals(bodies: &[ConvexBody], phi: f64) -> Vec<(f64, f64)> {
    let n = normal(phi);
    bodies.iter().map(|b| b.projection_interval(&n)).collect()
}

/// `g(phi)`: positive iff no line of direction `phi` meets every body.
pub fn offset_gap(bodies: &[ConvexBody], phi: f64) -> f64 {
    gap_of(&intervals(bodies, phi))
}

fn gap_of(iv: &[(f64, f64)]) -> f64 {
    let mut g = f64::NEG_INFINITY;
    for (i, a) in iv.iter().enumerate() {
        for (j, b) in iv.iter().enumerate() {
            if i != j {
                g = g.max(a.0 - b.1);
            }
        }
    }
    g
}

fn wrap(phi: f64) -> f64 {
    let t = phi.rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

/// Angles where `<n(phi), w> = c`, i.e. `|w| cos(phi + psi) = c`.
fn solve(w: P2, c: f64, out: &mut Vec<f64>) {
    let r = w[0].hypot(w[1]);
    if r == 0.0 {
        return;
    }
    let psi = w[0].atan2(w[1]);
    let x = c / r;
    if x.abs() > 1.0 + 1e-12 {
        return;
    }
    let a = x.clamp(-1.0, 1.0).acos();
    out.push(wrap(a - psi));
    out.push(wrap(-a - psi));
}

fn golden(bodies: &[ConvexBody], lo: f64, hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (offset_gap(bodies, c), offset_gap(bodies, d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = offset_gap(bodies, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = offset_gap(bodies, d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Every angle where `g` can attain a local minimum or change sign:
/// stationary angles, zeros and pairwise crossings of the sinusoid terms.
pub(crate) fn critical_angles(bodies: &[ConvexBody]) -> Result<Vec<f64>> {
    let all: Vec<Vec<(P2, f64)>> = bodies.iter().map(sites).collect::<Result<_>>()?;
    // terms <n, p - q> - (r_p + r_q) for every ordered pair of bodies
    let mut terms: Vec<(P2, f64)> = Vec::new();
    for (i, si) in all.iter().enumerate() {
        for (j, sj) in all.iter().enumerate() {
            if i == j {
                continue;
            }
            for (p, rp) in si {
                for (q, rq) in sj {
                    terms.push(([p[0] - q[0], p[1] - q[1]], rp + rq));
                }
            }
        }
    }
    terms.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]).then(a.0[1].total_cmp(&b.0[1])).then(a.1.total_cmp(&b.1)));
    terms.dedup();

    let mut angles = vec![0.0];
    for (idx, &(w, c)) in terms.iter().enumerate() {
        // stationary angles and zero crossings of each term
        solve(w, 0.0, &mut angles);
        let r = w[0].hypot(w[1]);
        if r > 0.0 {
            let psi = w[0].atan2(w[1]);
            angles.push(wrap(-psi));
        }
        solve(w, c, &mut angles);
        for &(w2, c2) in &terms[idx + 1..] {
            solve([w[0] - w2[0], w[1] - w2[1]], c - c2, &mut angles);
        }
    }
    Ok(angles)
}

/// Exact minimum of `g` over `[0, pi)`: `(phi, g(phi))`.
pub(crate) fn min_gap(bodies: &[ConvexBody]) -> Result<(f64, f64)> {
    let angles = critical_angles(bodies)?;
    let mut best = (0.0, f64::INFINITY);
    for &phi in &angles {
        let g = offset_gap(bodies, phi);
        if g < best.1 {
            best = (phi, g);
        }
    }
    let h = 1e-7;
    let refined = golden(bodies, best.0 - h, best.0 + h);
    if refined.1 < best.1 {
        best = (wrap(refined.0), refined.1);
    }
    Ok(best)
}

/// Line through the middle of the common offset range at angle `phi`.
pub(crate) fn line_at(bodies: &[ConvexBody], phi: f64) -> Result<KFlat> {
    let iv = intervals(bodies, phi);
    let lo = iv.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max);
    let hi = iv.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let s = (lo + hi) / 2.0;
    let n = normal(phi);
    KFlat::line(Point(vec![s * n[0], s * n[1]]), Direction::from_angle(phi))
}

/// Common line transversal of planar disks (and, more generally, of disks
/// and convex polygons), decided exactly.
pub fn line_transversal_2d(bodies: &[ConvexBody]) -> Result<TransversalAnswer> {
    let d = shared_dim(bodies)?;
    if d != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: d });
    }
    if bodies.len() == 1 {
        let p = bodies[0].representative_point();
        let line = KFlat::line(Point(p), Direction::axis(2, 0))?;
        return Ok(TransversalAnswer::pierced(line, bodies, Method::Trivial));
    }
    let (phi, g) = min_gap(bodies)?;
    Ok(if g <= ACCEPT_TOL {
        TransversalAnswer::pierced(line_at(bodies, phi)?, bodies, Method::LineSweep)
    } else if g > REJECT_TOL {
        TransversalAnswer::empty(true, Method::LineSweep)
    } else {
        TransversalAnswer::unknown(Method::LineSweep)
    })
}
