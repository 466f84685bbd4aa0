use super::{shared_dim, Method, TransversalAnswer, ACCEPT_TOL, REJECT_TOL};
use crate::error::Result;
use crate::geometry::candidates::{planar_candidates, supports_planar};
use crate::geometry::vector::{axpy, dist, norm};
use crate::geometry::{ConvexBody, KFlat, Point};

pub(crate) const MAX_ITER: usize = 10_000;

/// `max_i phi_i(p)` with a subgradient, where `phi_i` is the signed
/// distance to body `i` (plain distance for bodies without interior).
pub(crate) fn max_signed_distance(bodies: &[ConvexBody], p: &[f64]) -> (f64, Vec<f64>) {
    let mut best = (f64::NEG_INFINITY, vec![0.0; p.len()]);
    for b in bodies {
        let (v, g) = b.signed_distance(p);
        if v > best.0 {
            best = (v, g);
        }
    }
    best
}

fn scene_scale(bodies: &[ConvexBody]) -> f64 {
    let d = bodies[0].dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for b in bodies {
        let (l, h) = b.bounds();
        for i in 0..d {
            lo[i] = lo[i].min(l[i]);
            hi[i] = hi[i].max(h[i]);
        }
    }
    dist(&lo, &hi).max(1e-3)
}

/// Subgradient descent on `max_i phi_i` with a Polyak step towards an
/// adaptive target, followed by cyclic projections when the value is
/// already small. Returns the best value and point.
pub(crate) fn minimize_max(bodies: &[ConvexBody], max_iter: usize) -> (f64, Vec<f64>) {
    let d = bodies[0].dim();
    let n = bodies.len() as f64;
    let mut p = vec![0.0; d];
    for b in bodies {
        p = axpy(&p, 1.0 / n, &b.representative_point());
    }
    let scale = scene_scale(bodies);
    let (mut f, mut g) = max_signed_distance(bodies, &p);
    let (mut best_f, mut best_p) = (f, p.clone());
    let mut delta = 0.25 * scale;
    let mut stall = 0;
    for _ in 0..max_iter {
        if best_f < -1e-6 * scale || delta < 1e-15 * scale {
            break;
        }
        let gg = norm(&g).powi(2);
        if gg == 0.0 {
            break;
        }
        let step = (f - (best_f - delta)) / gg;
        p = axpy(&p, -step, &g);
        (f, g) = max_signed_distance(bodies, &p);
        if f < best_f - 0.5 * delta {
            stall = 0;
        } else {
            stall += 1;
        }
        if f < best_f {
            best_f = f;
            best_p = p.clone();
        }
        if stall >= 25 {
            delta *= 0.5;
            stall = 0;
            p = best_p.clone();
            (f, g) = max_signed_distance(bodies, &p);
        }
    }
    if best_f > 0.0 && best_f < 1e-3 * scale {
        let (f2, p2) = cyclic_projections(bodies, best_p.clone());
        if f2 < best_f {
            return (f2, p2);
        }
    }
    (best_f, best_p)
}

fn cyclic_projections(bodies: &[ConvexBody], mut p: Vec<f64>) -> (f64, Vec<f64>) {
    for _ in 0..5_000 {
        for b in bodies {
            p = b.project(&p);
        }
        if bodies.iter().all(|b| b.signed_distance(&p).0 <= 1e-12) {
            break;
        }
    }
    (max_signed_distance(bodies, &p).0, p)
}

fn point_answer(p: Vec<f64>, bodies: &[ConvexBody], method: Method) -> TransversalAnswer {
    TransversalAnswer::pierced(KFlat::point(Point(p)), bodies, method)
}

/// Common point of a family (a 0-flat transversal).
pub fn common_point(bodies: &[ConvexBody]) -> Result<TransversalAnswer> {
    let d = shared_dim(bodies)?;

    // boxes and intervals: per-axis interval intersection
    let boxes: Option<Vec<_>> = bodies.iter().map(|b| b.as_box()).collect();
    let boxes = boxes.or_else(|| {
        // balls on the line are intervals too
        (d == 1)
            .then(|| bodies.iter().map(|b| b.as_ball().map(|(c, r)| (vec![c[0] - r], vec![c[0] + r]))).collect())
            .flatten()
    });
    if let Some(boxes) = boxes {
        let mut value = f64::NEG_INFINITY;
        let p: Vec<f64> = (0..d)
            .map(|i| {
                let lo = boxes.iter().map(|b| b.0[i]).fold(f64::NEG_INFINITY, f64::max);
                let hi = boxes.iter().map(|b| b.1[i]).fold(f64::INFINITY, f64::min);
                value = value.max((lo - hi) / 2.0);
                (lo + hi) / 2.0
            })
            .collect();
        return TransversalAnswer::from_value(value, || Ok(KFlat::point(Point(p))), bodies, true, Method::AxisBoxes);
    }

    // balls: a separated pair certifies emptiness
    let balls: Option<Vec<_>> = bodies.iter().map(|b| b.as_ball()).collect();
    if let Some(balls) = &balls {
        for (i, (ci, ri)) in balls.iter().enumerate() {
            for (cj, rj) in &balls[i + 1..] {
                if dist(ci, cj) - ri - rj > 2.0 * REJECT_TOL {
                    return Ok(TransversalAnswer::empty(true, Method::BallPairs));
                }
            }
        }
    }

    // planar disks and polygons: exact candidate check
    if d == 2 && supports_planar(bodies) {
        for c in planar_candidates(bodies) {
            if bodies.iter().all(|b| b.contains(&c, ACCEPT_TOL)) {
                return Ok(point_answer(c.to_vec(), bodies, Method::PlanarCandidates));
            }
        }
        let (value, p) = minimize_max(bodies, MAX_ITER);
        return TransversalAnswer::from_value(value, || Ok(KFlat::point(Point(p))), bodies, true, Method::PlanarCandidates);
    }

    let (value, p) = minimize_max(bodies, MAX_ITER);
    TransversalAnswer::from_value(value, || Ok(KFlat::point(Point(p))), bodies, false, Method::Subgradient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transversal::Status;

    fn ball(c: &[f64], r: f64) -> ConvexBody {
        ConvexBody::ball(c.to_vec(), r).unwrap()
    }

    #[test]
    fn overlapping_unit_balls() {
        let a = common_point(&[ball(&[0.0, 0.0], 1.0), ball(&[1.0, 0.0], 1.0)]).unwrap();
        assert!(a.is_pierced());
    }

    #[test]
    fn separated_boxes_are_certified_empty() {
        let a = common_point(&[
            ConvexBody::axis_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap(),
            ConvexBody::axis_box(vec![2.0, 2.0], vec![3.0, 3.0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(a.status, Status::Empty { certified: true });
        assert_eq!(a.method, Method::AxisBoxes);
    }

    #[test]
    fn five_ball_configuration() {
        let centers = [[0.0, 0.0], [1.5, 0.0], [-1.5, 0.0], [0.0, 1.5], [0.0, -1.5]];
        let all: Vec<_> = centers.iter().map(|c| ball(c, 1.0)).collect();
        assert!(common_point(&all).unwrap().is_certified_empty());
        for b in &all[1..] {
            assert!(common_point(&[all[0].clone(), b.clone()]).unwrap().is_pierced());
        }
    }

    #[test]
    fn three_disks_without_pairwise_separation() {
        // pairwise intersecting, no common point: certified by the candidate check
        let r = 1.0;
        let s = 1.9;
        let cs = [[0.0, 0.0], [s, 0.0], [s / 2.0, s * 3f64.sqrt() / 2.0]];
        let bodies: Vec<_> = cs.iter().map(|c| ball(c, r)).collect();
        let a = common_point(&bodies).unwrap();
        assert!(a.is_certified_empty(), "{a:?}");
        let bodies: Vec<_> = cs.iter().map(|c| ball(c, 1.2)).collect();
        assert!(common_point(&bodies).unwrap().is_pierced());
    }

    #[test]
    fn balls_in_three_dimensions() {
        let a = common_point(&[ball(&[0.0, 0.0, 0.0], 1.0), ball(&[1.5, 0.0, 0.0], 1.0), ball(&[0.7, 1.0, 0.0], 1.0)]).unwrap();
        assert!(a.is_pierced());
        let b = common_point(&[ball(&[0.0, 0.0, 0.0], 1.0), ball(&[5.0, 0.0, 0.0], 1.0)]).unwrap();
        assert!(b.is_certified_empty());
    }

    #[test]
    fn tangent_disks_share_a_point() {
        let a = common_point(&[ball(&[0.0, 0.0], 1.0), ball(&[2.0, 0.0], 1.0)]).unwrap();
        assert!(a.is_pierced());
    }

    #[test]
    fn triangle_and_rectangle() {
        let t = ConvexBody::triangle([0.0, 0.0], [4.0, 0.0], [0.0, 4.0]).unwrap();
        let r = ConvexBody::oriented_rect([3.0, 3.0], [1.0, 0.0], 1.0, 1.5).unwrap();
        assert!(common_point(&[t.clone(), r]).unwrap().is_pierced());
        let far = ConvexBody::oriented_rect([5.0, 5.0], [1.0, 0.0], 0.5, 0.5).unwrap();
        assert!(common_point(&[t, far]).unwrap().is_certified_empty());
    }

    #[test]
    fn one_dimensional_balls_follow_interval_helly() {
        let a = common_point(&[ball(&[0.0], 1.0), ball(&[1.5], 1.0), ball(&[0.8], 0.3)]).unwrap();
        assert!(a.is_pierced());
        let b = common_point(&[ball(&[0.0], 1.0), ball(&[2.5], 1.0)]).unwrap();
        assert!(b.is_certified_empty());
    }
}
