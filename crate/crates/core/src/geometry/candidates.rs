//! Candidate points for planar arrangements of disks and convex polygons.
//!
//! If a nonempty intersection of some of the bodies exists, one of its
//! vertices is an intersection of two boundaries; when it has no vertex it
//! is a whole body and contains that body's center or one of its vertices.
//! Every such point is in the candidate set.

use super::body::ConvexBody;
use super::planar::{circle_intersections, project_to_segment, segment_circle_intersections, segment_intersection};
use super::vector::{add2, dist2, scale2, sub2, to_p2, P2};

/// Slack for near-tangent boundaries, so tangencies lost to rounding still
/// produce a contact point.
const TOUCH: f64 = 1e-9;

enum Shape {
    Disk(P2, f64),
    Poly(Vec<P2>),
}

fn shape(b: &ConvexBody) -> Option<Shape> {
    if b.dim() != 2 {
        return None;
    }
    if let Some((c, r)) = b.as_ball() {
        return Some(Shape::Disk(to_p2(c), r));
    }
    b.polygon2().map(Shape::Poly)
}

/// Whether every body is a disk or polygon in the plane.
pub fn supports_planar(bodies: &[ConvexBody]) -> bool {
    bodies.iter().all(|b| shape(b).is_some())
}

fn edges(v: &[P2]) -> impl Iterator<Item = (P2, P2)> + '_ {
    (0..v.len()).map(move |i| (v[i], v[(i + 1) % v.len()]))
}

fn disk_disk(c1: P2, r1: f64, c2: P2, r2: f64, out: &mut Vec<P2>) {
    let pts = circle_intersections(c1, r1, c2, r2);
    if !pts.is_empty() {
        out.extend(pts);
        return;
    }
    let d = dist2(c1, c2);
    if d == 0.0 {
        return;
    }
    let e = scale2(sub2(c2, c1), 1.0 / d);
    if (d - r1 - r2).abs() <= TOUCH {
        out.push(add2(c1, scale2(e, r1)));
    } else if (d - (r1 - r2).abs()).abs() <= TOUCH {
        // internal tangency: the contact lies on the far side of the smaller circle
        let s = if r1 >= r2 { r1 } else { -r1 };
        out.push(add2(c1, scale2(e, s)));
    }
}

fn seg_disk(a: P2, b: P2, c: P2, r: f64, out: &mut Vec<P2>) {
    let pts = segment_circle_intersections(a, b, c, r);
    if pts.is_empty() {
        let q = project_to_segment(c, a, b);
        if (dist2(q, c) - r).abs() <= TOUCH {
            out.push(q);
        }
    }
    out.extend(pts);
}

/// Pairwise boundary intersections (with near-tangent contacts) of two bodies.
pub fn pair_candidates(a: &ConvexBody, b: &ConvexBody) -> Vec<P2> {
    let mut out = Vec::new();
    let (Some(sa), Some(sb)) = (shape(a), shape(b)) else { return out };
    match (&sa, &sb) {
        (Shape::Disk(c1, r1), Shape::Disk(c2, r2)) => disk_disk(*c1, *r1, *c2, *r2, &mut out),
        (Shape::Disk(c, r), Shape::Poly(v)) | (Shape::Poly(v), Shape::Disk(c, r)) => {
            for (p, q) in edges(v) {
                seg_disk(p, q, *c, *r, &mut out);
            }
        }
        (Shape::Poly(v), Shape::Poly(w)) => {
            for (p, q) in edges(v) {
                for (s, t) in edges(w) {
                    out.extend(segment_intersection(p, q, s, t, 1e-12));
                }
            }
        }
    }
    out
}

/// Centers of disks and vertices of polygons.
pub fn own_candidates(b: &ConvexBody) -> Vec<P2> {
    match shape(b) {
        Some(Shape::Disk(c, _)) => vec![c],
        Some(Shape::Poly(v)) => v,
        None => Vec::new(),
    }
}

/// Full candidate set of a planar family.
pub fn planar_candidates(bodies: &[ConvexBody]) -> Vec<P2> {
    let mut out: Vec<P2> = bodies.iter().flat_map(own_candidates).collect();
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            out.extend(pair_candidates(&bodies[i], &bodies[j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_disks_yield_the_contact_point() {
        let a = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        let b = ConvexBody::ball(vec![2.0 + 5e-10, 0.0], 1.0).unwrap();
        let pts = pair_candidates(&a, &b);
        assert_eq!(pts.len(), 1);
        assert!(dist2(pts[0], [1.0, 0.0]) < 1e-9);
    }

    #[test]
    fn square_and_disk_crossings() {
        let s = ConvexBody::axis_box(vec![0.0, 0.0], vec![2.0, 2.0]).unwrap();
        let d = ConvexBody::ball(vec![2.0, 1.0], 0.5).unwrap();
        let pts = pair_candidates(&s, &d);
        assert_eq!(pts.len(), 2);
        for p in pts {
            assert!((p[0] - 2.0).abs() < 1e-12);
        }
    }
}
