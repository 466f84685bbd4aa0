//! Planar helpers shared by the polygonal bodies: hulls, edge normals,
//! projections onto segments and polygons, and separating-axis tests.

use super::vector::{add2, cross2, dist2, dot2, norm2, scale2, sub2, P2};

/// Andrew's monotone chain. Returns the hull in counter-clockwise order
/// without repeating the first vertex; collinear points are dropped.
pub fn convex_hull(points: &[P2]) -> Vec<P2> {
    let mut pts: Vec<P2> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<P2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross2(sub2(lower[lower.len() - 1], lower[lower.len() - 2]), sub2(p, lower[lower.len() - 2])) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(sub2(upper[upper.len() - 1], upper[upper.len() - 2]), sub2(p, upper[upper.len() - 2])) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn polygon_area(v: &[P2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| cross2(v[i], v[(i + 1) % n])).sum::<f64>() / 2.0
}

/// Outward unit normals and offsets `(n, b)` with `n . x <= b` describing a
/// CCW convex polygon.
pub fn half_planes(v: &[P2]) -> Vec<(P2, f64)> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let e = sub2(v[(i + 1) % n], v[i]);
            let len = norm2(e);
            let normal = [e[1] / len, -e[0] / len];
            (normal, dot2(normal, v[i]))
        })
        .collect()
}

pub fn project_to_segment(p: P2, a: P2, b: P2) -> P2 {
    let ab = sub2(b, a);
    let len2 = dot2(ab, ab);
    if len2 == 0.0 {
        return a;
    }
    let t = (dot2(sub2(p, a), ab) / len2).clamp(0.0, 1.0);
    add2(a, scale2(ab, t))
}

pub fn dist_to_segment(p: P2, a: P2, b: P2) -> f64 {
    dist2(p, project_to_segment(p, a, b))
}

/// Signed distance to a CCW convex polygon (negative inside) together with
/// a subgradient.
pub fn polygon_signed_distance(v: &[P2], p: P2) -> (f64, P2) {
    let planes = half_planes(v);
    let (mut best, mut grad) = (f64::NEG_INFINITY, [0.0, 0.0]);
    for &(n, b) in &planes {
        let s = dot2(n, p) - b;
        if s > best {
            best = s;
            grad = n;
        }
    }
    if best <= 0.0 {
        return (best, grad);
    }
    let q = project_to_polygon(v, p);
    let d = dist2(p, q);
    if d == 0.0 {
        return (0.0, grad);
    }
    (d, scale2(sub2(p, q), 1.0 / d))
}

/// Nearest point of a CCW convex polygon.
pub fn project_to_polygon(v: &[P2], p: P2) -> P2 {
    if v.len() == 1 {
        return v[0];
    }
    if half_planes(v).iter().all(|&(n, b)| dot2(n, p) - b <= 0.0) {
        return p;
    }
    let n = v.len();
    let mut best = v[0];
    let mut best_d = f64::INFINITY;
    for i in 0..n {
        let q = project_to_segment(p, v[i], v[(i + 1) % n]);
        let d = dist2(p, q);
        if d < best_d {
            best_d = d;
            best = q;
        }
    }
    best
}

pub fn polygon_contains(v: &[P2], p: P2, tol: f64) -> bool {
    polygon_signed_distance(v, p).0 <= tol
}

fn project_interval(v: &[P2], axis: P2) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
        let s = dot2(p, axis);
        (lo.min(s), hi.max(s))
    })
}

/// Separating-axis test for two convex polygons (vertex lists in any
/// orientation). Touching polygons intersect; `tol` is the allowed gap.
pub fn convex_polygons_intersect(a: &[P2], b: &[P2], tol: f64) -> bool {
    separation(a, b) <= tol
}

/// Largest gap found among the edge normals of both polygons; positive
/// means the polygons are disjoint and the value is a lower bound on
/// their distance.
pub fn separation(a: &[P2], b: &[P2]) -> f64 {
    let mut gap = f64::NEG_INFINITY;
    for poly in [a, b] {
        let n = poly.len();
        for i in 0..n {
            let e = sub2(poly[(i + 1) % n], poly[i]);
            let len = norm2(e);
            if len == 0.0 {
                continue;
            }
            let axis = [-e[1] / len, e[0] / len];
            let (alo, ahi) = project_interval(a, axis);
            let (blo, bhi) = project_interval(b, axis);
            gap = gap.max(blo - ahi).max(alo - bhi);
        }
    }
    gap
}

/// A point common to two convex polygons (CCW), if they meet within `tol`.
/// The average of the vertices of the intersection polygon is returned, so
/// the point sits inside rather than on a corner.
pub fn polygon_intersection_point(a: &[P2], b: &[P2], tol: f64) -> Option<P2> {
    let mut pts: Vec<P2> = a.iter().copied().filter(|&p| polygon_contains(b, p, tol)).collect();
    pts.extend(b.iter().copied().filter(|&p| polygon_contains(a, p, tol)));
    for i in 0..a.len() {
        for j in 0..b.len() {
            pts.extend(segment_intersection(a[i], a[(i + 1) % a.len()], b[j], b[(j + 1) % b.len()], tol));
        }
    }
    if pts.is_empty() {
        return None;
    }
    let n = pts.len() as f64;
    let sum = pts.iter().fold([0.0, 0.0], |s, p| add2(s, *p));
    Some(scale2(sum, 1.0 / n))
}

/// Intersection of segments `ab` and `cd`; collinear overlaps return the
/// overlap endpoints.
pub fn segment_intersection(a: P2, b: P2, c: P2, d: P2, tol: f64) -> Vec<P2> {
    let r = sub2(b, a);
    let s = sub2(d, c);
    let denom = cross2(r, s);
    let qp = sub2(c, a);
    let scale = norm2(r).max(norm2(s)).max(1.0);
    if denom.abs() <= 1e-14 * scale * scale {
        if cross2(qp, r).abs() > tol * norm2(r).max(1e-300) {
            return Vec::new();
        }
        let rr = dot2(r, r);
        if rr == 0.0 {
            return if dist_to_segment(a, c, d) <= tol { vec![a] } else { Vec::new() };
        }
        let t0 = dot2(qp, r) / rr;
        let t1 = t0 + dot2(s, r) / rr;
        let (lo, hi) = (t0.min(t1).max(0.0), t0.max(t1).min(1.0));
        if lo > hi + tol / rr.sqrt() {
            return Vec::new();
        }
        let lo = lo.min(hi);
        return vec![add2(a, scale2(r, lo)), add2(a, scale2(r, hi))];
    }
    let t = cross2(qp, s) / denom;
    let u = cross2(qp, r) / denom;
    let p = add2(a, scale2(r, t));
    let eps_t = tol / norm2(r).max(1e-300);
    let eps_u = tol / norm2(s).max(1e-300);
    if t >= -eps_t && t <= 1.0 + eps_t && u >= -eps_u && u <= 1.0 + eps_u {
        vec![p]
    } else {
        Vec::new()
    }
}

/// Intersection points of two circles (empty when they are nested or apart).
pub fn circle_intersections(c1: P2, r1: f64, c2: P2, r2: f64) -> Vec<P2> {
    let d = dist2(c1, c2);
    if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let e = scale2(sub2(c2, c1), 1.0 / d);
    let m = add2(c1, scale2(e, a));
    let perp = [-e[1], e[0]];
    if h == 0.0 {
        vec![m]
    } else {
        vec![add2(m, scale2(perp, h)), add2(m, scale2(perp, -h))]
    }
}

/// Intersections of the segment `ab` with the circle `(c, r)`.
pub fn segment_circle_intersections(a: P2, b: P2, c: P2, r: f64) -> Vec<P2> {
    let d = sub2(b, a);
    let f = sub2(a, c);
    let qa = dot2(d, d);
    if qa == 0.0 {
        return Vec::new();
    }
    let qb = 2.0 * dot2(f, d);
    let qc = dot2(f, f) - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let mut out = Vec::new();
    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
        if (0.0..=1.0).contains(&t) {
            out.push(add2(a, scale2(d, t)));
        }
    }
    out
}

/// Clips segment `ab` to the closed disk `(c, r)`; returns the parameter
/// range inside the disk.
pub fn clip_segment_to_disk(a: P2, b: P2, c: P2, r: f64) -> Option<(f64, f64)> {
    let d = sub2(b, a);
    let f = sub2(a, c);
    let qa = dot2(d, d);
    if qa == 0.0 {
        return if dist2(a, c) <= r { Some((0.0, 0.0)) } else { None };
    }
    let qb = 2.0 * dot2(f, d);
    let qc = dot2(f, f) - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t0 = ((-qb - sq) / (2.0 * qa)).max(0.0);
    let t1 = ((-qb + sq) / (2.0 * qa)).min(1.0);
    if t0 > t1 {
        None
    } else {
        Some((t0, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_point() {
        let h = convex_hull(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0]]);
        assert_eq!(h.len(), 4);
        assert!(polygon_area(&h) > 0.99);
    }

    #[test]
    fn signed_distance_inside_and_outside() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!((polygon_signed_distance(&sq, [0.5, 0.5]).0 + 0.5).abs() < 1e-15);
        assert!((polygon_signed_distance(&sq, [2.0, 0.5]).0 - 1.0).abs() < 1e-15);
        assert!((polygon_signed_distance(&sq, [2.0, 2.0]).0 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sat_detects_touching_and_separated() {
        let a = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let b = [[1.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0]];
        let c = [[1.5, 0.0], [2.0, 0.0], [2.0, 1.0], [1.5, 1.0]];
        assert!(convex_polygons_intersect(&a, &b, 1e-12));
        assert!(!convex_polygons_intersect(&a, &c, 1e-12));
    }

    #[test]
    fn crossing_segments() {
        let p = segment_intersection([0.0, 0.0], [2.0, 2.0], [0.0, 2.0], [2.0, 0.0], 1e-12);
        assert_eq!(p.len(), 1);
        assert!((p[0][0] - 1.0).abs() < 1e-15);
        assert!(segment_intersection([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], 1e-12).is_empty());
        let overlap = segment_intersection([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [3.0, 0.0], 1e-12);
        assert_eq!(overlap.len(), 2);
    }

    #[test]
    fn circles_meeting_at_two_points() {
        let pts = circle_intersections([0.0, 0.0], 1.0, [1.0, 0.0], 1.0);
        assert_eq!(pts.len(), 2);
        for p in pts {
            assert!((norm2(p) - 1.0).abs() < 1e-12);
        }
    }
}
