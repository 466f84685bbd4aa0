//! Compact connected sets with bounded condition number that pairwise
//! meet while no three share a point: balls with polyline tails.

use crate::error::{Error, Result};
use crate::geometry::planar::{clip_segment_to_disk, segment_intersection};
use crate::geometry::vector::{dist2, to_p2, P2};
use crate::geometry::{CompoundBody, ConvexBody, Piece};

/// Ratio of the ball radius to the radius of a ball around its center
/// containing every earlier body.
pub const TAIL_RHO: f64 = 0.5;
const GAP: f64 = 1.0;

fn radius(m: u32) -> f64 {
    4f64.powi(m as i32)
}

fn lane(m: u32) -> f64 {
    m as f64 * 0.01 * radius(1)
}

/// Center abscissa of ball `m`: each ball sits `GAP` to the right of the
/// previous one.
fn center(m: u32) -> f64 {
    (2..=m).fold(0.0, |x, k| x + radius(k - 1) + GAP + radius(k))
}

/// Body `m >= 1`: the ball `F_m` of radius `4^m` on the x-axis, plus for
/// `m >= 2` a tail from its center up to height `m * eta` and then left to
/// the center line of the first ball.
///
/// Every earlier body lies in `B(c_m, r_m / rho)` and misses `F_m`. Tails
/// run at distinct heights, so they never cross, and the tail of `m` meets
/// an earlier body `j` only inside `F_j`, away from every other tail.
pub fn gen_ball_with_tail(m: u32) -> Result<CompoundBody> {
    if m == 0 {
        return Err(Error::DegenerateIndex(0));
    }
    let x = center(m);
    let mut pieces = vec![Piece::Convex(ConvexBody::ball(vec![x, 0.0], radius(m))?)];
    if m >= 2 {
        let y = lane(m);
        pieces.push(Piece::Polyline { polyline: vec![[x, 0.0], [x, y], [0.0, y]] });
    }
    CompoundBody::new(pieces)
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    Disk(P2, f64),
    Segment(P2, P2),
}

fn shapes(c: &CompoundBody) -> Vec<Shape> {
    let mut out: Vec<Shape> = c
        .convex_pieces()
        .map(|b| {
            let (c, r) = b.as_ball().expect("tail compounds hold disks");
            Shape::Disk(to_p2(c), r)
        })
        .collect();
    out.extend(c.segments().into_iter().map(|(a, b)| Shape::Segment(a, b)));
    out
}

/// Parameter range of segment `ab` inside `s`.
fn clip(a: P2, b: P2, s: Shape) -> Option<(f64, f64)> {
    match s {
        Shape::Disk(c, r) => clip_segment_to_disk(a, b, c, r),
        Shape::Segment(c, d) => {
            let hits = segment_intersection(a, b, c, d, 1e-12);
            let len2 = dist2(a, b).powi(2);
            let param = |p: P2| ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / len2;
            let ts: Vec<f64> = hits.iter().map(|&p| param(p)).collect();
            let lo = ts.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (lo <= hi).then_some((lo, hi))
        }
    }
}

/// Whether the given disks and segments share a point. Segments are
/// clipped against the others; disks alone go through the exact planar
/// common-point test.
fn shapes_meet(parts: &[Shape]) -> bool {
    if let Some(k) = parts.iter().position(|s| matches!(s, Shape::Segment(..))) {
        let Shape::Segment(a, b) = parts[k] else { unreachable!() };
        let mut range = (0.0f64, 1.0f64);
        for (j, s) in parts.iter().enumerate() {
            if j == k {
                continue;
            }
            let Some((lo, hi)) = clip(a, b, *s) else { return false };
            range = (range.0.max(lo), range.1.min(hi));
            if range.0 > range.1 + 1e-12 {
                return false;
            }
        }
        return true;
    }
    let disks: Vec<ConvexBody> = parts
        .iter()
        .map(|s| match s {
            Shape::Disk(c, r) => ConvexBody::ball(c.to_vec(), *r).unwrap(),
            Shape::Segment(..) => unreachable!(),
        })
        .collect();
    crate::transversal::common_point(&disks).map(|a| a.is_pierced()).unwrap_or(true)
}

/// Whether the compound bodies share a point, checked over every choice of
/// one piece from each.
pub fn compounds_meet(bodies: &[&CompoundBody]) -> bool {
    let all: Vec<Vec<Shape>> = bodies.iter().map(|b| shapes(b)).collect();
    let mut idx = vec![0usize; all.len()];
    loop {
        let pick: Vec<Shape> = idx.iter().zip(&all).map(|(&i, s)| s[i]).collect();
        if shapes_meet(&pick) {
            return true;
        }
        let mut a = all.len();
        loop {
            if a == 0 {
                return false;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < all[a].len() {
                break;
            }
            idx[a] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn first(n: u32) -> Vec<CompoundBody> {
        (1..=n).map(|m| gen_ball_with_tail(m).unwrap()).collect()
    }

    #[test]
    fn pairs_meet() {
        let b = first(6);
        for (x, y) in b.iter().tuple_combinations() {
            assert!(compounds_meet(&[x, y]));
        }
    }

    #[test]
    fn no_triple_point() {
        let b = first(6);
        for (x, y, z) in b.iter().tuple_combinations() {
            assert!(!compounds_meet(&[x, y, z]));
        }
    }

    #[test]
    fn earlier_bodies_fit_in_the_enlarged_ball() {
        for m in 2..=8 {
            let c = [center(m), 0.0];
            let big = radius(m) / TAIL_RHO;
            for k in 1..m {
                let body = gen_ball_with_tail(k).unwrap();
                for s in shapes(&body) {
                    match s {
                        Shape::Disk(p, r) => {
                            assert!(dist2(p, c) + r <= big);
                            assert!(dist2(p, c) > r + radius(m), "F_{m} meets ball {k}");
                        }
                        Shape::Segment(a, b) => {
                            assert!(dist2(a, c) <= big && dist2(b, c) <= big);
                            assert!(crate::geometry::planar::dist_to_segment(c, a, b) > radius(m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn first_body_is_a_plain_ball() {
        let b = gen_ball_with_tail(1).unwrap();
        assert_eq!(b.pieces.len(), 1);
        assert!(gen_ball_with_tail(0).is_err());
        let piece = b.convex_pieces().next().unwrap();
        assert_eq!(crate::geometry::radii(piece).unwrap().sigma, 1.0);
    }
}
