use super::body::ConvexBody;
use super::flat::{dist_point_flat, KFlat};
use super::vector::{check_dim, dist, dot, norm, to_p2, Point};
use crate::error::{Error, Result};

/// Movement threshold for the alternating-projection fallback.
pub const AP_TOL: f64 = 1e-10;
/// Iteration cap for the alternating-projection fallback.
pub const AP_MAX_ITER: usize = 10_000;

/// Minimum distance between a convex body and a flat.
///
/// Closed forms are used for balls, points, boxes against axis-parallel
/// flats and polytopes against hyperplanes; lifted polygons are tested by
/// crossing the flat with their plane first. Everything else falls back to
/// alternating projections.
pub fn dist_body_flat(body: &ConvexBody, flat: &KFlat) -> Result<f64> {
    check_dim(flat.dim(), body.dim())?;
    if let Some((c, r)) = body.as_ball() {
        return Ok((dist_point_flat(&Point(c.to_vec()), flat)? - r).max(0.0));
    }
    if flat.k() == 0 {
        let p = flat.base().coords();
        return Ok(dist(p, &body.project(p)));
    }
    if let (Some((lo, hi)), Some(axes)) = (body.as_box(), flat.coordinate_axes()) {
        let base = flat.base().coords();
        let gap2: f64 = (0..lo.len())
            .filter(|i| !axes.contains(i))
            .map(|i| {
                let g = (lo[i] - base[i]).max(base[i] - hi[i]).max(0.0);
                g * g
            })
            .sum();
        return Ok(gap2.sqrt());
    }
    if flat.k() + 1 == flat.dim() {
        if let Some(vs) = body.vertices() {
            return Ok(polytope_hyperplane_distance(&vs, flat));
        }
    }
    if let ConvexBody::Lifted { vertices, z } = body {
        if let Some(p) = crossing_with_plane(flat, *z) {
            if super::planar::polygon_contains(vertices, to_p2(&p), 1e-12) {
                return Ok(0.0);
            }
        }
    }
    alternating_projection(body, flat).map(|(d, _, _)| d)
}

fn polytope_hyperplane_distance(vertices: &[Vec<f64>], flat: &KFlat) -> f64 {
    // normal = the one-dimensional orthogonal complement
    let d = flat.dim();
    let normal = (0..d)
        .map(|i| {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            flat.reject(&e)
        })
        .max_by(|a, b| norm(a).total_cmp(&norm(b)))
        .unwrap();
    let n = norm(&normal);
    let normal: Vec<f64> = normal.iter().map(|x| x / n).collect();
    let offset = dot(&normal, flat.base().coords());
    let (lo, hi) = vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        let s = dot(&normal, v) - offset;
        (lo.min(s), hi.max(s))
    });
    if lo <= 0.0 && hi >= 0.0 {
        0.0
    } else {
        lo.abs().min(hi.abs())
    }
}

/// Point where `flat` (k >= 1) crosses the horizontal plane at height `z`,
/// if the crossing is a single point of a line.
fn crossing_with_plane(flat: &KFlat, z: f64) -> Option<Vec<f64>> {
    if flat.k() != 1 || flat.dim() != 3 {
        return None;
    }
    let dir = flat.basis()[0].coords();
    if dir[2].abs() < 1e-12 {
        return None;
    }
    let base = flat.base().coords();
    let t = (z - base[2]) / dir[2];
    Some(vec![base[0] + t * dir[0], base[1] + t * dir[1], z])
}

/// Alternating projections between `body` and `flat`. Returns the final
/// distance and the two iterates (point on the body, point on the flat).
pub fn alternating_projection(body: &ConvexBody, flat: &KFlat) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    check_dim(flat.dim(), body.dim())?;
    let mut on_body = body.project(flat.base().coords());
    let mut on_flat = flat.project(&on_body);
    let mut movement = f64::INFINITY;
    for _ in 0..AP_MAX_ITER {
        let next_body = body.project(&on_flat);
        let next_flat = flat.project(&next_body);
        movement = dist(&next_body, &on_body).max(dist(&next_flat, &on_flat));
        on_body = next_body;
        on_flat = next_flat;
        if movement < AP_TOL {
            return Ok((dist(&on_body, &on_flat), on_body, on_flat));
        }
    }
    // An already-touching pair stops moving only asymptotically; accept it
    // when the gap itself is below the tolerance.
    let gap = dist(&on_body, &on_flat);
    if gap < AP_TOL {
        return Ok((gap, on_body, on_flat));
    }
    Err(Error::NonConvergence { iterations: AP_MAX_ITER, movement })
}

/// Distance from a point to a body (zero inside).
pub fn dist_point_body(p: &[f64], body: &ConvexBody) -> Result<f64> {
    check_dim(body.dim(), p.len())?;
    Ok(dist(p, &body.project(p)))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector::Direction;

    fn x_axis() -> KFlat {
        KFlat::line(Point(vec![0.0, 0.0]), Direction::axis(2, 0)).unwrap()
    }

    #[test]
    fn ball_against_line() {
        let b = ConvexBody::ball(vec![0.0, 2.0], 1.0).unwrap();
        assert_eq!(dist_body_flat(&b, &x_axis()).unwrap(), 1.0);
    }

    #[test]
    fn box_contains_point_flat() {
        let b = ConvexBody::axis_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let k = KFlat::point(Point(vec![0.5, 0.5]));
        assert_eq!(dist_body_flat(&b, &k).unwrap(), 0.0);
    }

    #[test]
    fn box_against_axis_parallel_line() {
        let b = ConvexBody::axis_box(vec![0.0, 2.0, 0.0], vec![1.0, 3.0, 1.0]).unwrap();
        let k = KFlat::axis_parallel(Point(vec![0.0, 0.0, 5.0]), &[0]).unwrap();
        assert!((dist_body_flat(&b, &k).unwrap() - (4.0f64 + 16.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn polygon_against_line_uses_vertex_signs() {
        let t = ConvexBody::triangle([0.0, 1.0], [1.0, 2.0], [-1.0, 2.0]).unwrap();
        assert!((dist_body_flat(&t, &x_axis()).unwrap() - 1.0).abs() < 1e-15);
        let k = KFlat::line(Point(vec![0.0, 1.5]), Direction::axis(2, 0)).unwrap();
        assert_eq!(dist_body_flat(&t, &k).unwrap(), 0.0);
    }

    #[test]
    fn alternating_projection_on_tilted_box_in_r3() {
        let b = ConvexBody::axis_box(vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]).unwrap();
        let k = KFlat::line(Point(vec![3.0, 3.0, 0.0]), Direction::new(vec![1.0, -1.0, 0.0]).unwrap()).unwrap();
        // closest flat point is (3,3,0) - the line x + y = 6 in z = 0; box corner (1,1,z)
        let d = dist_body_flat(&b, &k).unwrap();
        assert!((d - (4.0 / 2f64.sqrt())).abs() < 1e-8, "{d}");
        let (gap, on_b, on_k) = alternating_projection(&b, &k).unwrap();
        assert!((gap - d).abs() < 1e-8);
        assert!(b.contains(&on_b, 1e-9));
        assert!(dist_point_flat(&Point(on_k), &k).unwrap() < 1e-9);
    }

    #[test]
    fn lifted_polygon_pierced_by_vertical_line() {
        let l = ConvexBody::lifted(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], 4.0).unwrap();
        let k = KFlat::line(Point(vec![0.2, 0.2, 0.0]), Direction::axis(3, 2)).unwrap();
        assert_eq!(dist_body_flat(&l, &k).unwrap(), 0.0);
        let miss = KFlat::line(Point(vec![2.0, 2.0, 0.0]), Direction::axis(3, 2)).unwrap();
        let d = dist_body_flat(&l, &miss).unwrap();
        assert!((d - (1.5f64 * 1.5 * 2.0).sqrt()).abs() < 1e-8, "{d}");
    }
}
