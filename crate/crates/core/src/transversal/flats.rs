use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::line2d::line_transversal_2d;
use super::point::{common_point, minimize_max};
use super::{shared_dim, Method, TransversalAnswer, ACCEPT_TOL, REJECT_TOL};
use crate::error::{Error, Result};
use crate::geometry::candidates::{planar_candidates, supports_planar};
use crate::geometry::planar::{convex_hull, polygon_area, polygon_intersection_point, separation};
use crate::geometry::vector::{axpy, dot, norm, scale, sub, P2};
use crate::geometry::{ConvexBody, Direction, KFlat, Point};

/// Default number of sampled frames for the heuristic search.
pub const DEFAULT_BUDGET: usize = 256;

const FRAME_ITERS: usize = 400;

/// Orthonormalizes `vectors` (dropping dependent ones) and pads with
/// coordinate axes up to `k` vectors.
fn complete_frame(vectors: &[Vec<f64>], d: usize, k: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    let axes = (0..d).map(|i| {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        e
    });
    for v in vectors.iter().cloned().chain(axes) {
        if out.len() == k {
            break;
        }
        let mut w = v;
        for _ in 0..2 {
            for b in &out {
                let c = dot(&w, b);
                w = axpy(&w, -c, b);
            }
        }
        let n = norm(&w);
        if n > 1e-9 {
            out.push(scale(&w, 1.0 / n));
        }
    }
    out
}

fn make_flat(base: Vec<f64>, frame: &[Vec<f64>]) -> Result<KFlat> {
    let basis = frame.iter().map(|v| Direction::new(v.clone())).collect::<Result<Vec<_>>>()?;
    KFlat::new(Point(base), basis)
}

/// A flat through one point of each of at most k+1 bodies.
fn trivial(k: usize, bodies: &[ConvexBody], d: usize) -> Result<TransversalAnswer> {
    let pts: Vec<Vec<f64>> = bodies.iter().map(|b| b.representative_point()).collect();
    let diffs: Vec<Vec<f64>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    let frame = complete_frame(&diffs, d, k);
    Ok(TransversalAnswer::pierced(make_flat(pts[0].clone(), &frame)?, bodies, Method::Trivial))
}

/// Common k-flat transversal for `1 <= k <= d-1`.
///
/// Exact routes: lines in the plane (sweep) and lines through three lifted
/// polygons at distinct heights. Everything else is searched over sampled
/// and refined direction frames; found witnesses are verified, failures are
/// reported as unknown.
pub fn flat_transversal(k: usize, bodies: &[ConvexBody], budget: usize) -> Result<TransversalAnswer> {
    let d = shared_dim(bodies)?;
    if k == 0 || k >= d {
        return Err(Error::InvalidK { k, d });
    }
    if bodies.len() <= k + 1 {
        return trivial(k, bodies, d);
    }
    if d == 2 && supports_planar(bodies) {
        return line_transversal_2d(bodies);
    }
    if k == 1 && bodies.len() == 3 {
        if let Some(answer) = lifted_triple(bodies)? {
            return Ok(answer);
        }
    }
    frame_search(k, bodies, d, budget)
}

fn lifted_parts(b: &ConvexBody) -> Option<(&[P2], f64)> {
    match b {
        ConvexBody::Lifted { vertices, z } => Some((vertices, *z)),
        _ => None,
    }
}

/// Three planar polygons lifted to heights `a < b < c`. A line meets all
/// three iff `R_b` meets `(1-t) R_a + t R_c` with `t = (b-a)/(c-a)`; the
/// Minkowski combination of convex polygons is the hull of the vertex
/// combinations, so the test is exact.
fn lifted_triple(bodies: &[ConvexBody]) -> Result<Option<TransversalAnswer>> {
    let parts: Option<Vec<_>> = bodies.iter().map(lifted_parts).collect();
    let Some(mut parts) = parts else { return Ok(None) };
    parts.sort_by(|x, y| x.1.total_cmp(&y.1));
    let (ra, za) = parts[0];
    let (rb, zb) = parts[1];
    let (rc, zc) = parts[2];
    if zb - za <= 1e-12 || zc - zb <= 1e-12 {
        return Ok(None);
    }
    let t = (zb - za) / (zc - za);
    let combo: Vec<P2> = ra
        .iter()
        .flat_map(|x| rc.iter().map(move |y| [(1.0 - t) * x[0] + t * y[0], (1.0 - t) * x[1] + t * y[1]]))
        .collect();
    let m = convex_hull(&combo);
    let gap = separation(&m, rb);
    if gap > REJECT_TOL {
        return Ok(Some(TransversalAnswer::empty(true, Method::LiftedTriple)));
    }
    if gap > ACCEPT_TOL {
        return Ok(Some(TransversalAnswer::unknown(Method::LiftedTriple)));
    }
    let Some(z) = polygon_intersection_point(&m, rb, 1e-12) else {
        return Ok(Some(TransversalAnswer::unknown(Method::LiftedTriple)));
    };
    // x in R_a with (z - (1-t) x) / t in R_c
    let shifted: Vec<P2> = rc.iter().map(|y| [(z[0] - t * y[0]) / (1.0 - t), (z[1] - t * y[1]) / (1.0 - t)]).collect();
    let shifted = convex_hull(&shifted);
    let Some(x) = polygon_intersection_point(ra, &shifted, 1e-12) else {
        return Ok(Some(TransversalAnswer::unknown(Method::LiftedTriple)));
    };
    let y = [(z[0] - (1.0 - t) * x[0]) / t, (z[1] - (1.0 - t) * x[1]) / t];
    let base = vec![x[0], x[1], za];
    let dir = Direction::new(vec![y[0] - x[0], y[1] - x[1], zc - za])?;
    let line = KFlat::line(Point(base), dir)?;
    Ok(Some(TransversalAnswer::pierced(line, bodies, Method::LiftedTriple)))
}

/// Orthonormal basis of the complement of `frame`.
fn complement(frame: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    let all = complete_frame(frame, d, d);
    all[frame.len()..].to_vec()
}

/// The body seen along the frame: its image in complement coordinates, or
/// a box enclosing it when the image has no cheap exact form. Enclosures
/// only produce candidates, which are re-verified.
fn project_body(b: &ConvexBody, w: &[Vec<f64>]) -> Option<ConvexBody> {
    let m = w.len();
    let coords = |p: &[f64]| -> Vec<f64> { w.iter().map(|a| dot(a, p)).collect() };
    if let Some((c, r)) = b.as_ball() {
        return Some(ConvexBody::Ball { center: Point(coords(c)), radius: r });
    }
    let pts: Vec<Vec<f64>> = b.vertices()?.iter().map(|v| coords(v)).collect();
    let lo: Vec<f64> = (0..m).map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..m).map(|i| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    match m {
        1 => Some(ConvexBody::Interval { lo: lo[0], hi: hi[0] }),
        2 => {
            let hull = convex_hull(&pts.iter().map(|p| [p[0], p[1]]).collect::<Vec<_>>());
            let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
            if hull.len() >= 3 && polygon_area(&hull) > 1e-12 * extent * extent {
                Some(ConvexBody::Polygon { vertices: hull })
            } else {
                None
            }
        }
        _ => Some(ConvexBody::AxisBox { lo: Point(lo), hi: Point(hi) }),
    }
}

enum FrameOutcome {
    Found(TransversalAnswer),
    Value(f64),
}

fn try_frame(frame: &[Vec<f64>], bodies: &[ConvexBody], d: usize) -> Result<FrameOutcome> {
    let w = complement(frame, d);
    let proj: Option<Vec<ConvexBody>> = bodies.iter().map(|b| project_body(b, &w)).collect();
    let Some(proj) = proj else { return Ok(FrameOutcome::Value(f64::INFINITY)) };
    let lift = |y: &[f64]| -> Vec<f64> {
        let mut base = vec![0.0; d];
        for (a, c) in w.iter().zip(y) {
            base = axpy(&base, *c, a);
        }
        base
    };
    let verify = |y: &[f64]| -> Result<Option<TransversalAnswer>> {
        let answer = TransversalAnswer::pierced(make_flat(lift(y), frame)?, bodies, Method::FrameSearch);
        Ok(answer.is_pierced().then_some(answer))
    };
    if w.len() == 2 && supports_planar(&proj) {
        for c in planar_candidates(&proj) {
            if proj.iter().all(|b| b.contains(&c, ACCEPT_TOL)) {
                if let Some(a) = verify(&c)? {
                    return Ok(FrameOutcome::Found(a));
                }
            }
        }
    } else if w.len() == 1 {
        let a = common_point(&proj)?;
        if let Some(p) = a.witness() {
            if let Some(a) = verify(p.base().coords())? {
                return Ok(FrameOutcome::Found(a));
            }
        }
    }
    let (value, y) = minimize_max(&proj, FRAME_ITERS);
    if value <= ACCEPT_TOL {
        if let Some(a) = verify(&y)? {
            return Ok(FrameOutcome::Found(a));
        }
    }
    Ok(FrameOutcome::Value(value.max(0.0)))
}

fn fibonacci_hemisphere(count: usize) -> Vec<Vec<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let th = golden * i as f64;
            vec![r * th.cos(), r * th.sin(), z]
        })
        .collect()
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return scale(&v, 1.0 / n);
        }
    }
}

fn candidate_frames(k: usize, bodies: &[ConvexBody], d: usize, budget: usize) -> Vec<Vec<Vec<f64>>> {
    let mut frames = Vec::new();
    let reps: Vec<Vec<f64>> = bodies.iter().map(|b| b.representative_point()).collect();
    // flats through k+1 representative points, taken in order
    for start in 0..reps.len().saturating_sub(k) {
        let diffs: Vec<Vec<f64>> = (1..=k).map(|j| sub(&reps[start + j], &reps[start])).collect();
        frames.push(complete_frame(&diffs, d, k));
    }
    if k == 1 {
        for i in 0..reps.len() {
            for j in i + 2..reps.len() {
                frames.push(complete_frame(&[sub(&reps[j], &reps[i])], d, 1));
            }
        }
        if d == 3 {
            frames.extend(fibonacci_hemisphere(budget / 2).into_iter().map(|v| vec![v]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11_5eed ^ ((d as u64) << 32) ^ ((k as u64) << 16) ^ bodies.len() as u64);
    while frames.len() < budget.max(1) + reps.len() * reps.len() {
        let vs: Vec<Vec<f64>> = (0..k).map(|_| random_unit(&mut rng, d)).collect();
        let f = complete_frame(&vs, d, k);
        if f.len() == k {
            frames.push(f);
        }
    }
    frames.retain(|f| f.len() == k);
    frames
}

/// Rotates frame vector `a` towards complement vector `b` by `angle`.
fn rotate(frame: &[Vec<f64>], d: usize, a: usize, b: usize, angle: f64) -> Vec<Vec<f64>> {
    let w = complement(frame, d);
    let mut f = frame.to_vec();
    f[a] = axpy(&scale(&frame[a], angle.cos()), angle.sin(), &w[b]);
    complete_frame(&f, d, frame.len())
}

fn frame_search(k: usize, bodies: &[ConvexBody], d: usize, budget: usize) -> Result<TransversalAnswer> {
    let frames = candidate_frames(k, bodies, d, budget);
    let mut scored: Vec<(f64, usize)> = Vec::with_capacity(frames.len());
    for (idx, f) in frames.iter().enumerate() {
        match try_frame(f, bodies, d)? {
            FrameOutcome::Found(a) => return Ok(a),
            FrameOutcome::Value(v) => scored.push((v, idx)),
        }
    }
    scored.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    for &(value, idx) in scored.iter().take(3) {
        if !value.is_finite() {
            continue;
        }
        let mut frame = frames[idx].clone();
        let mut best = value;
        let mut step = 0.05;
        while step > 1e-6 {
            let mut improved = false;
            for a in 0..k {
                for b in 0..d - k {
                    for sign in [1.0, -1.0] {
                        let cand = rotate(&frame, d, a, b, sign * step);
                        if cand.len() != k {
                            continue;
                        }
                        match try_frame(&cand, bodies, d)? {
                            FrameOutcome::Found(ans) => return Ok(ans),
                            FrameOutcome::Value(v) if v < best => {
                                best = v;
                                frame = cand;
                                improved = true;
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
    }
    Ok(TransversalAnswer::unknown(Method::FrameSearch))
}

/// Flat spanned by the coordinate axes in `axis_set`, decided exactly on
/// axis boxes by intersecting the projections on the remaining axes.
pub fn axis_flat_transversal(k: usize, boxes: &[ConvexBody], axis_set: &[usize]) -> Result<TransversalAnswer> {
    let d = shared_dim(boxes)?;
    let mut sorted = axis_set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if axis_set.len() != k || sorted.len() != k || sorted.iter().any(|&a| a >= d) || k >= d {
        return Err(Error::AxisSet { expected: k, d });
    }
    let bounds: Vec<(Vec<f64>, Vec<f64>)> = boxes
        .iter()
        .map(|b| b.as_box().ok_or_else(|| Error::Unsupported(format!("axis flats need boxes, got {}", b.kind()))))
        .collect::<Result<_>>()?;
    let mut value = f64::NEG_INFINITY;
    let mut base = vec![0.0; d];
    for i in (0..d).filter(|i| !sorted.contains(i)) {
        let lo = bounds.iter().map(|b| b.0[i]).fold(f64::NEG_INFINITY, f64::max);
        let hi = bounds.iter().map(|b| b.1[i]).fold(f64::INFINITY, f64::min);
        value = value.max((lo - hi) / 2.0);
        base[i] = (lo + hi) / 2.0;
    }
    TransversalAnswer::from_value(value, || KFlat::axis_parallel(Point(base), &sorted), boxes, true, Method::AxisBoxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn ball(c: &[f64], r: f64) -> ConvexBody {
        ConvexBody::ball(c.to_vec(), r).unwrap()
    }

    #[test]
    fn collinear_balls_in_space() {
        let b: Vec<_> = [0.0, 4.0, 8.0].iter().map(|x| ball(&[*x, 0.0, 0.0], 1.0)).collect();
        let a = flat_transversal(1, &b, DEFAULT_BUDGET).unwrap();
        assert!(a.is_pierced());
    }

    #[test]
    fn scattered_balls_stay_unknown_never_empty() {
        let b = vec![
            ball(&[0.0, 0.0, 0.0], 0.1),
            ball(&[10.0, 0.0, 0.0], 0.1),
            ball(&[0.0, 10.0, 0.0], 0.1),
            ball(&[0.0, 0.0, 10.0], 0.1),
        ];
        let a = flat_transversal(1, &b, 64).unwrap();
        assert!(!a.is_pierced());
        assert!(!a.is_certified_empty());
    }

    #[test]
    fn planar_lines_go_through_the_sweep() {
        let b: Vec<_> = [[0.0, 0.0], [10.0, 0.0], [5.0, 10.0]].iter().map(|c| ball(c, 1.0)).collect();
        let a = flat_transversal(1, &b, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.method, Method::LineSweep);
        assert!(a.is_certified_empty());
    }

    #[test]
    fn lifted_squares_with_common_projection() {
        let sq = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let b: Vec<_> = [2.0, 3.0, 4.0].iter().map(|z| ConvexBody::lifted(sq.clone(), *z).unwrap()).collect();
        let a = flat_transversal(1, &b, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.method, Method::LiftedTriple);
        assert!(a.is_pierced());
    }

    #[test]
    fn lifted_triple_against_sampled_lines() {
        // middle square far off to the side of the other two: no line
        let sq = |x: f64| vec![[x, 0.0], [x + 1.0, 0.0], [x + 1.0, 1.0], [x, 1.0]];
        let b = vec![
            ConvexBody::lifted(sq(0.0), 0.0).unwrap(),
            ConvexBody::lifted(sq(5.0), 1.0).unwrap(),
            ConvexBody::lifted(sq(0.0), 2.0).unwrap(),
        ];
        assert!(flat_transversal(1, &b, DEFAULT_BUDGET).unwrap().is_certified_empty());
        // slanted arrangement: a tilted line works, found exactly
        let b = vec![
            ConvexBody::lifted(sq(0.0), 0.0).unwrap(),
            ConvexBody::lifted(sq(2.0), 1.0).unwrap(),
            ConvexBody::lifted(sq(4.0), 2.0).unwrap(),
        ];
        assert!(flat_transversal(1, &b, DEFAULT_BUDGET).unwrap().is_pierced());
    }

    #[test]
    fn axis_parallel_lines_through_boxes() {
        let a = ConvexBody::axis_box(vec![0.0, 0.0], vec![9.0, 1.0]).unwrap();
        let b = ConvexBody::axis_box(vec![0.0, 0.5], vec![9.0, 2.0]).unwrap();
        let ans = axis_flat_transversal(1, &[a.clone(), b], &[0]).unwrap();
        let w = ans.witness().unwrap();
        assert!((w.base().coords()[1] - 0.75).abs() < 1e-12);
        let c = ConvexBody::axis_box(vec![0.0, 3.0], vec![9.0, 4.0]).unwrap();
        assert!(axis_flat_transversal(1, &[a.clone(), c], &[0]).unwrap().is_certified_empty());
        assert!(matches!(axis_flat_transversal(1, &[a], &[0, 1]), Err(Error::AxisSet { .. })));
    }

    #[test]
    fn empty_axis_set_matches_common_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let boxes: Vec<_> = (0..rng.gen_range(1..5))
                .map(|_| {
                    let lo: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..5.0)).collect();
                    let hi: Vec<f64> = lo.iter().map(|l| l + rng.gen_range(0.5..4.0)).collect();
                    ConvexBody::axis_box(lo, hi).unwrap()
                })
                .collect();
            let a = axis_flat_transversal(0, &boxes, &[]).unwrap();
            let b = common_point(&boxes).unwrap();
            assert_eq!(a.is_pierced(), b.is_pierced());
            assert_eq!(a.is_certified_empty(), b.is_certified_empty());
        }
    }
}
