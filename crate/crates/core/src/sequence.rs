//! Constructive sequence builders over family streams: distance escalation
//! for disjoint heterochromatic chains, and the exclusion-cone extension
//! for 1-independent sequences in the plane.

use std::f64::consts::{FRAC_PI_4, PI};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::vector::{add, axpy, dot, norm, scale, sub};
use crate::geometry::{cone_contains, Cone, ConvexBody, Direction, KFlat, Point};
use crate::stabbing::{ChainMember, ChainOutcome, DisjointChain, DISJOINT_TOL};
use crate::transversal::line2d::critical_angles;
use crate::transversal::{line_transversal_2d, offset_gap};

/// Members a generated stream inspects before giving up.
pub const DEFAULT_HORIZON: usize = 10_000;

/// A request a stream answers with one of its members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "predicate", rename_all = "kebab-case")]
pub enum Predicate {
    /// Every point of the body is at least `min_dist` from the origin.
    FarFromOrigin { min_dist: f64 },
    InsideCone { cone: Cone },
    /// Inside the cone, and the body's projection onto the line orthogonal
    /// to `direction` misses that of every obstacle.
    InsideConeAndProjectionDisjoint { cone: Cone, direction: Direction, obstacles: Vec<ConvexBody> },
}

impl Predicate {
    pub fn accepts(&self, body: &ConvexBody) -> bool {
        match self {
            Predicate::FarFromOrigin { min_dist } => body.inf_norm() >= *min_dist,
            Predicate::InsideCone { cone } => cone_contains(cone, body).unwrap_or(false),
            Predicate::InsideConeAndProjectionDisjoint { cone, direction, obstacles } => {
                cone_contains(cone, body).unwrap_or(false)
                    && obstacles.iter().all(|o| projections_disjoint(body, o, direction).unwrap_or(false))
            }
        }
    }
}

/// Finite interface to an infinite family.
pub trait FamilyStream {
    fn index(&self) -> usize;
    /// A member satisfying `pred`, or `None` when the stream cannot supply one.
    fn query(&mut self, pred: &Predicate) -> Option<ConvexBody>;
}

/// Stream over an explicit member list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListStream {
    pub index: usize,
    pub members: Vec<ConvexBody>,
}

impl FamilyStream for ListStream {
    fn index(&self) -> usize {
        self.index
    }

    fn query(&mut self, pred: &Predicate) -> Option<ConvexBody> {
        self.members.iter().find(|b| pred.accepts(b)).cloned()
    }
}

/// Stream whose `j`-th member comes from a generator; answers are the
/// first generated member satisfying the request within the horizon.
pub struct FnStream {
    index: usize,
    horizon: usize,
    generator: Box<dyn Fn(usize) -> Option<ConvexBody> + Send + Sync>,
}

impl FnStream {
    pub fn new(index: usize, horizon: usize, generator: impl Fn(usize) -> Option<ConvexBody> + Send + Sync + 'static) -> Self {
        FnStream { index, horizon, generator: Box::new(generator) }
    }

    pub fn member(&self, j: usize) -> Option<ConvexBody> {
        (self.generator)(j)
    }
}

impl FamilyStream for FnStream {
    fn index(&self) -> usize {
        self.index
    }

    fn query(&mut self, pred: &Predicate) -> Option<ConvexBody> {
        (0..self.horizon).filter_map(|j| (self.generator)(j)).find(|b| pred.accepts(b))
    }
}

fn ask<S: FamilyStream>(stream: &mut S, pred: &Predicate) -> Option<Result<ConvexBody>> {
    let body = stream.query(pred)?;
    if !pred.accepts(&body) {
        return Some(Err(Error::VerificationFailed(format!("stream {} answered outside the predicate", stream.index()))));
    }
    Some(Ok(body))
}

/// One member from each of the first `m` streams, each beyond every earlier
/// choice: stream `n+1` is asked for a body at distance `R_n + 1` from the
/// origin, `R_n` being the largest norm reached so far.
pub fn greedy_disjoint_heterochromatic<S: FamilyStream>(streams: &mut [S], m: usize) -> Result<DisjointChain> {
    if streams.len() < m {
        return Err(Error::PrereqViolated(format!("{} streams for a chain of length {m}", streams.len())));
    }
    let mut chain = DisjointChain::default();
    let mut reach: Option<f64> = None;
    for s in streams[..m].iter_mut() {
        let pred = Predicate::FarFromOrigin { min_dist: reach.map_or(0.0, |r| r + 1.0) };
        let body = ask(s, &pred).ok_or(Error::StreamExhausted { family: s.index() })??;
        reach = Some(reach.unwrap_or(0.0).max(body.sup_norm()));
        chain.members.push(ChainMember { family: s.index(), body });
    }
    if !(chain.is_heterochromatic() && chain.is_pairwise_disjoint()) {
        return Err(Error::VerificationFailed("greedy chain is not disjoint and heterochromatic".into()));
    }
    Ok(chain)
}

fn check_planar(body: &ConvexBody) -> Result<()> {
    if body.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: body.dim() });
    }
    Ok(())
}

fn normal(x: &Direction) -> Result<Vec<f64>> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: x.dim() });
    }
    let c = x.coords();
    Ok(vec![-c[1], c[0]])
}

/// Gap between the projections of two planar bodies onto the line
/// orthogonal to `x`; positive iff no line parallel to `x` meets both.
fn projection_gap(a: &ConvexBody, b: &ConvexBody, x: &Direction) -> Result<f64> {
    let n = normal(x)?;
    let (p, q) = (a.projection_interval(&n), b.projection_interval(&n));
    Ok((p.0 - q.1).max(q.0 - p.1))
}

fn projections_disjoint(a: &ConvexBody, b: &ConvexBody, x: &Direction) -> Result<bool> {
    Ok(projection_gap(a, b, x)? > DISJOINT_TOL)
}

// distance between two line directions
fn line_angle(a: f64, b: f64) -> f64 {
    let t = (a - b).rem_euclid(PI);
    t.min(PI - t)
}

/// Angular distance from `x` to the nearest direction of a line meeting
/// both bodies.
pub fn pair_direction_gap(si: &ConvexBody, sj: &ConvexBody, x: &Direction) -> Result<f64> {
    check_planar(si)?;
    check_planar(sj)?;
    if !projections_disjoint(si, sj, x)? {
        return Err(Error::PrereqViolated("a line parallel to the axis meets both bodies".into()));
    }
    let pair = [si.clone(), sj.clone()];
    let phi_x = x.coords()[1].atan2(x.coords()[0]).rem_euclid(PI);
    let hits = |phi: f64| offset_gap(&pair, phi) <= 0.0;
    let mut angles = critical_angles(&pair)?;
    angles.sort_by(f64::total_cmp);
    let mids: Vec<f64> = angles.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    angles.extend(mids);
    let nearest = angles
        .into_iter()
        .filter(|&phi| hits(phi))
        .min_by(|a, b| line_angle(*a, phi_x).total_cmp(&line_angle(*b, phi_x)))
        .expect("the line through two interior points meets both bodies");
    // bisect the arc from the axis towards the nearest hitting angle
    let mut step = (nearest - phi_x).rem_euclid(PI);
    if step > PI / 2.0 {
        step -= PI;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = (lo + hi) / 2.0;
        if hits(phi_x + mid * step) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let eps = hi * step.abs();
    debug_assert!(eps > 0.0);
    Ok(eps)
}

/// `min(sup |p|)` over the two bodies: every line meeting both passes
/// within this distance of the origin.
pub fn pair_distance_bound(si: &ConvexBody, sj: &ConvexBody) -> f64 {
    si.sup_norm().min(sj.sup_norm())
}

/// Bodies chosen so far by the independent-sequence builder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceState {
    pub k: usize,
    pub direction: Direction,
    pub chosen: Vec<(usize, ConvexBody)>,
}

impl IndependenceState {
    pub fn new(k: usize, direction: Direction) -> Result<Self> {
        match k {
            0 => {}
            1 if direction.dim() == 2 => {}
            _ => return Err(Error::Unsupported(format!("independent sequences for k = {k} in dimension {}", direction.dim()))),
        }
        Ok(IndependenceState { k, direction, chosen: Vec::new() })
    }

    fn bodies(&self) -> Vec<ConvexBody> {
        self.chosen.iter().map(|c| c.1.clone()).collect()
    }

    /// Re-checks both recorded conditions with certified procedures: no
    /// k+1 of the bodies on a flat parallel to the direction, no k+2 on
    /// any flat.
    pub fn verify(&self) -> Result<()> {
        let bodies = self.bodies();
        for i in 0..bodies.len() {
            self.verify_last(&bodies[..=i])?;
        }
        Ok(())
    }

    // conditions involving the last body of `bodies`
    fn verify_last(&self, bodies: &[ConvexBody]) -> Result<()> {
        let Some((last, rest)) = bodies.split_last() else { return Ok(()) };
        if self.k == 0 {
            if let Some(i) = rest.iter().position(|b| !crate::stabbing::bodies_disjoint(b, last)) {
                return Err(Error::VerificationFailed(format!("bodies {i} and {} meet", rest.len())));
            }
            return Ok(());
        }
        for (i, b) in rest.iter().enumerate() {
            if !projections_disjoint(b, last, &self.direction)? {
                return Err(Error::VerificationFailed(format!("bodies {i} and {} share a line parallel to the axis", rest.len())));
            }
        }
        let pairs: Vec<(usize, usize)> = (0..rest.len()).tuple_combinations().collect();
        let bad = pairs.par_iter().find_first(|&&(i, j)| {
            let triple = [rest[i].clone(), rest[j].clone(), last.clone()];
            !matches!(line_transversal_2d(&triple), Ok(a) if a.is_certified_empty())
        });
        if let Some((i, j)) = bad {
            return Err(Error::VerificationFailed(format!("bodies {i}, {j} and {} are not certified free of a common line", rest.len())));
        }
        Ok(())
    }

    pub fn to_chain(&self) -> DisjointChain {
        DisjointChain { members: self.chosen.iter().map(|(f, b)| ChainMember { family: *f, body: b.clone() }).collect() }
    }
}

/// Cone along the state's direction that no line through two chosen bodies
/// can reach.
///
/// With `eps_ij` the direction gap and `d_ij` the distance bound of a pair,
/// the half-angle is `min eps_ij / 2` and the apex sits at
/// `D = max d_ij / sin(eps_ij) + 1` along the axis: a line through the
/// pair crosses the axis within `d_ij / sin(eps_ij)` of the origin and
/// leaves the cone's apex on the same side as the whole cone. Fewer than
/// two bodies give the quarter cone at the origin.
pub fn build_exclusion_cone(state: &IndependenceState) -> Result<Cone> {
    let bodies = state.bodies();
    let mut eps = 2.0 * FRAC_PI_4;
    let mut apex = 0.0f64;
    if state.k == 1 {
        for (a, b) in bodies.iter().tuple_combinations() {
            let e = pair_direction_gap(a, b, &state.direction)?;
            eps = eps.min(e);
            apex = apex.max(pair_distance_bound(a, b) / e.sin() + 1.0);
        }
    }
    Cone::new(Point(scale(state.direction.coords(), apex)), state.direction.clone(), (eps / 2.0).min(FRAC_PI_4))
}

/// Appends a member of the next stream that keeps the sequence
/// k-independent, and re-verifies the result.
pub fn extend_independent<S: FamilyStream>(mut state: IndependenceState, streams: &mut [S]) -> Result<IndependenceState> {
    let next = state.chosen.len();
    let Some(stream) = streams.get_mut(next) else { return Err(Error::StreamExhausted { family: next }) };
    let family = stream.index();
    let body = if state.k == 0 {
        let reach = state.chosen.iter().map(|c| c.1.sup_norm()).fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))));
        let pred = Predicate::FarFromOrigin { min_dist: reach.map_or(0.0, |r| r + 1.0) };
        ask(stream, &pred).ok_or(Error::StreamExhausted { family })??
    } else {
        let cone = build_exclusion_cone(&state)?;
        let pred = Predicate::InsideConeAndProjectionDisjoint { cone, direction: state.direction.clone(), obstacles: state.bodies() };
        match ask(stream, &pred) {
            Some(b) => b?,
            None => {
                return Err(Error::Stuck(format!(
                    "family {family} has no member inside the exclusion cone with a free projection (chain length {next})"
                )))
            }
        }
    };
    if body.dim() != state.direction.dim() {
        return Err(Error::DimensionMismatch { expected: state.direction.dim(), found: body.dim() });
    }
    state.chosen.push((family, body));
    state.verify_last(&state.bodies())?;
    Ok(state)
}

/// Runs [`extend_independent`] until the sequence has `m` members or the
/// builder gets stuck.
pub fn build_independent<S: FamilyStream>(k: usize, direction: Direction, streams: &mut [S], m: usize) -> Result<ChainOutcome> {
    let mut state = IndependenceState::new(k, direction)?;
    while state.chosen.len() < m {
        let best = state.to_chain();
        state = match extend_independent(state, streams) {
            Ok(s) => s,
            Err(e @ (Error::Stuck(_) | Error::StreamExhausted { .. })) => return Ok(ChainOutcome::Stuck { best, reason: e.to_string() }),
            Err(e) => return Err(e),
        };
    }
    Ok(ChainOutcome::Chain { chain: state.to_chain() })
}

/// `dist(K, r') / |u_K|` for the ray `r'` from `p + c v` along `v`, where
/// `u_K` is the point of `r'` closest to `K`.
pub fn flat_ray_clearance(flat: &KFlat, p: &[f64], v: &Direction, c: f64) -> Result<f64> {
    let d = flat.dim();
    if p.len() != d || v.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: if p.len() != d { p.len() } else { v.dim() } });
    }
    let w = flat.reject(v.coords());
    let along = (1.0 - dot(&w, &w)).max(0.0).sqrt();
    if along >= 1.0 - 1e-9 {
        return Err(Error::ParallelFlat);
    }
    let start = axpy(p, c, v.coords());
    let a = flat.reject(&sub(&start, flat.base().coords()));
    let t = (-dot(&a, &w) / dot(&w, &w)).max(0.0);
    let u = axpy(&start, t, v.coords());
    let gap = norm(&add(&a, &scale(&w, t)));
    let len = norm(&u);
    Ok(if len == 0.0 {
        if gap == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        gap / len
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn disk(x: f64, y: f64, r: f64) -> ConvexBody {
        ConvexBody::ball(vec![x, y], r).unwrap()
    }

    fn rows(count: usize) -> Vec<FnStream> {
        (1..=count)
            .map(|n| FnStream::new(n, DEFAULT_HORIZON, move |j| Some(disk(4.0 * (j + 1) as f64, 4.0 * n as f64 + 8.0, 1.0))))
            .collect()
    }

    fn cone_layout(count: usize) -> Vec<FnStream> {
        (1..=count)
            .map(|n| FnStream::new(n, 400, move |j| Some(disk(10.0 * 2f64.powf(j as f64 / 4.0), 10.0 * n as f64, 1.0))))
            .collect()
    }

    fn grid_gap(a: &ConvexBody, b: &ConvexBody, x: &Direction, steps: usize) -> f64 {
        let phi_x = x.coords()[1].atan2(x.coords()[0]);
        let pair = [a.clone(), b.clone()];
        (0..steps)
            .map(|s| PI * s as f64 / steps as f64)
            .filter(|&phi| offset_gap(&pair, phi) <= 0.0)
            .map(|phi| line_angle(phi, phi_x))
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn greedy_rows_are_disjoint() {
        let chain = greedy_disjoint_heterochromatic(&mut rows(12), 12).unwrap();
        assert_eq!(chain.families(), (1..=12).collect::<Vec<_>>());
        for (a, b) in chain.members.iter().tuple_combinations() {
            let (ca, ra) = a.body.as_ball().unwrap();
            let (cb, rb) = b.body.as_ball().unwrap();
            assert!(crate::geometry::vector::dist(ca, cb) - ra - rb > 0.0);
        }
        let one = greedy_disjoint_heterochromatic(&mut rows(1), 1).unwrap();
        assert_eq!(one.members[0].body, disk(4.0, 12.0, 1.0));
    }

    #[test]
    fn greedy_boxes_on_shells() {
        let mut streams: Vec<FnStream> = (1..=10)
            .map(|n| {
                FnStream::new(n, 64, move |j| {
                    let r = 3f64.powi(j as i32);
                    let a = n as f64;
                    let c = [r * a.cos(), r * a.sin()];
                    Some(ConvexBody::axis_box(vec![c[0] - 1.0, c[1] - 0.5], vec![c[0] + 1.0, c[1] + 0.5]).unwrap())
                })
            })
            .collect();
        assert_eq!(greedy_disjoint_heterochromatic(&mut streams, 10).unwrap().len(), 10);
    }

    #[test]
    fn exhausted_stream_is_reported() {
        let mut streams = vec![ListStream { index: 0, members: vec![disk(0.0, 0.0, 1.0)] }, ListStream { index: 1, members: vec![disk(1.0, 0.0, 1.0)] }];
        assert_eq!(greedy_disjoint_heterochromatic(&mut streams, 2), Err(Error::StreamExhausted { family: 1 }));
    }

    #[test]
    fn direction_gap_matches_grid() {
        let x = Direction::axis(2, 0);
        let (a, b) = (disk(0.0, 5.0, 1.0), disk(0.0, -5.0, 1.0));
        let eps = pair_direction_gap(&a, &b, &x).unwrap();
        assert!(eps > 0.0 && eps <= PI / 2.0);
        assert!((eps - grid_gap(&a, &b, &x, 100_000)).abs() < 1e-4);
        // lines through both disks deviate from vertical by at most asin(1/5)
        assert!((eps - (PI / 2.0 - 0.2f64.asin())).abs() < 1e-9);
        let horizontal = pair_direction_gap(&disk(-5.0, 0.0, 1.0), &disk(5.0, 0.0, 1.0), &x);
        assert!(matches!(horizontal, Err(Error::PrereqViolated(_))));
    }

    #[test]
    fn direction_gap_grows_with_separation() {
        let x = Direction::axis(2, 0);
        let near = pair_direction_gap(&disk(0.0, 0.0, 1.0), &disk(20.0, 3.0, 1.0), &x).unwrap();
        let far = pair_direction_gap(&disk(0.0, 0.0, 1.0), &disk(20.0, 9.0, 1.0), &x).unwrap();
        assert!(far > near);
        for (a, b) in [(disk(0.0, 0.0, 1.0), disk(20.0, 3.0, 1.0)), (disk(0.0, 0.0, 1.0), disk(20.0, 9.0, 1.0))] {
            let eps = pair_direction_gap(&a, &b, &x).unwrap();
            assert!((eps - grid_gap(&a, &b, &x, 100_000)).abs() < 1e-4);
        }
    }

    #[test]
    fn distance_bounds() {
        assert_eq!(pair_distance_bound(&disk(3.0, 0.0, 1.0), &disk(0.0, 100.0, 1.0)), 4.0);
        assert_eq!(pair_distance_bound(&disk(5.0, 0.0, 1.0), &disk(7.0, 0.0, 1.0)), 6.0);
        assert!(pair_distance_bound(&disk(0.0, 0.0, 1.0), &disk(7.0, 0.0, 1.0)) >= 0.0);
    }

    #[test]
    fn exclusion_cone_parameters() {
        let x = Direction::axis(2, 0);
        let empty = IndependenceState::new(1, x.clone()).unwrap();
        let c = build_exclusion_cone(&empty).unwrap();
        assert_eq!((c.half_angle, c.apex.coords().to_vec()), (FRAC_PI_4, vec![0.0, 0.0]));

        let mut st = IndependenceState::new(1, x.clone()).unwrap();
        st.chosen = vec![(0, disk(0.0, 5.0, 1.0)), (1, disk(0.0, -5.0, 1.0))];
        let c = build_exclusion_cone(&st).unwrap();
        let eps = pair_direction_gap(&st.chosen[0].1, &st.chosen[1].1, &x).unwrap();
        assert!((c.half_angle - eps / 2.0).abs() < 1e-15);
        assert!((c.apex.coords()[0] - (6.0 / eps.sin() + 1.0)).abs() < 1e-12);

        st.chosen.push((2, disk(30.0, 15.0, 1.0)));
        let c = build_exclusion_cone(&st).unwrap();
        let gaps: Vec<f64> = (0..3).tuple_combinations().map(|(i, j)| pair_direction_gap(&st.chosen[i].1, &st.chosen[j].1, &x).unwrap()).collect();
        assert!((c.half_angle - gaps.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn bodies_inside_the_cone_avoid_lines_through_pairs() {
        let x = Direction::axis(2, 0);
        let mut st = IndependenceState::new(1, x.clone()).unwrap();
        st.chosen = vec![(0, disk(0.0, 5.0, 1.0)), (1, disk(2.0, -5.0, 1.0)), (2, disk(14.0, 20.0, 1.5))];
        let cone = build_exclusion_cone(&st).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut tested = 0;
        while tested < 1000 {
            let t = cone.apex.coords()[0] + rng.gen_range(1.0..500.0);
            let h = (t - cone.apex.coords()[0]) * cone.half_angle.tan();
            let b = disk(t, rng.gen_range(-h..h), rng.gen_range(0.01..2.0));
            if !cone_contains(&cone, &b).unwrap() {
                continue;
            }
            tested += 1;
            for (p, q) in st.chosen.iter().tuple_combinations() {
                let a = line_transversal_2d(&[p.1.clone(), q.1.clone(), b.clone()]).unwrap();
                assert!(a.is_certified_empty());
            }
        }
    }

    #[test]
    fn cone_layout_reaches_six() {
        let out = build_independent(1, Direction::axis(2, 0), &mut cone_layout(6), 6).unwrap();
        let chain = out.chain().expect("builder finished").clone();
        assert_eq!(chain.len(), 6);
        let bodies: Vec<_> = chain.members.iter().map(|m| m.body.clone()).collect();
        for (a, b, c) in bodies.iter().tuple_combinations() {
            assert!(line_transversal_2d(&[a.clone(), b.clone(), c.clone()]).unwrap().is_certified_empty());
        }
    }

    #[test]
    fn zero_dimensional_path_is_distance_escalation() {
        let out = build_independent(0, Direction::axis(2, 0), &mut rows(5), 5).unwrap();
        let greedy = greedy_disjoint_heterochromatic(&mut rows(5), 5).unwrap();
        assert_eq!(out.chain().unwrap(), &greedy);
    }

    #[test]
    fn shared_projection_gets_stuck() {
        let mut streams: Vec<FnStream> = (0..2)
            .map(|n| FnStream::new(n, 100, move |j| Some(disk(10.0 * (j + 2) as f64, 0.5 * n as f64, 1.0))))
            .collect();
        let out = build_independent(1, Direction::axis(2, 0), &mut streams, 2).unwrap();
        let ChainOutcome::Stuck { best, .. } = out else { panic!("expected stuck") };
        assert_eq!(best.len(), 1);
    }

    #[test]
    fn ray_clearance_examples() {
        let xaxis = KFlat::line(Point(vec![0.0, 0.0]), Direction::axis(2, 0)).unwrap();
        let up = Direction::axis(2, 1);
        assert!((flat_ray_clearance(&xaxis, &[0.0, 0.0], &up, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let through = KFlat::line(Point(vec![0.0, 3.0]), Direction::axis(2, 0)).unwrap();
        assert_eq!(flat_ray_clearance(&through, &[0.0, 0.0], &up, 1.0).unwrap(), 0.0);
        let vertical = KFlat::line(Point(vec![1.0, 0.0]), Direction::axis(2, 1)).unwrap();
        assert_eq!(flat_ray_clearance(&vertical, &[0.0, 0.0], &up, 1.0), Err(Error::ParallelFlat));
    }

    #[test]
    fn ray_clearance_is_scale_invariant() {
        let dir = Direction::new(vec![1.0, 2.0, -0.5]).unwrap();
        let v = Direction::new(vec![0.3, -0.1, 1.0]).unwrap();
        let f = |t: f64| {
            let flat = KFlat::line(Point(vec![t, -2.0 * t, 0.5 * t]), dir.clone()).unwrap();
            flat_ray_clearance(&flat, &[0.2 * t, 0.1 * t, -t], &v, 1.5 * t).unwrap()
        };
        assert!((f(1.0) - f(7.5)).abs() < 1e-12);
        assert!(f(1.0) > 0.0);
    }
}
