//! Unit-ball grid families and the stream layouts used by the builders.

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::sequence::{FnStream, DEFAULT_HORIZON};

/// Member `j` (1-based) of family `n`: the unit ball at the origin for
/// `n = 1`, the four balls at `(+-1.5, 0)`, `(0, +-1.5)` for `n = 2`, and
/// the ball at `(4j, 4n)` for `n >= 3`.
pub fn gen_unit_ball_grid(n: u32, j: u32) -> Result<ConvexBody> {
    let c = match (n, j) {
        (1, 1) => [0.0, 0.0],
        (2, 1..=4) => [[1.5, 0.0], [-1.5, 0.0], [0.0, 1.5], [0.0, -1.5]][j as usize - 1],
        (3.., 1..) => [4.0 * j as f64, 4.0 * n as f64],
        (0, _) => return Err(Error::DegenerateIndex(0)),
        _ => return Err(Error::DegenerateIndex(j as i64)),
    };
    ConvexBody::ball(c.to_vec(), 1.0)
}

/// Family `n` of the grid as a stream, members in order of `j`.
pub fn grid_stream(n: u32) -> FnStream {
    FnStream::new(n as usize, DEFAULT_HORIZON, move |j| gen_unit_ball_grid(n, j as u32 + 1).ok())
}

/// Unit disks at `(4j, 4n + 8)`, `j >= 1`: one row per family.
pub fn row_stream(n: u32) -> FnStream {
    FnStream::new(n as usize, DEFAULT_HORIZON, move |j| ConvexBody::ball(vec![4.0 * (j + 1) as f64, 4.0 * n as f64 + 8.0], 1.0).ok())
}

/// Unit disks at height `10 n` with abscissae `10 * 2^(j/4)`: the far
/// members of every family enter any cone around the positive x-axis.
pub fn nested_cone_stream(n: u32) -> FnStream {
    FnStream::new(n as usize, 400, move |j| ConvexBody::ball(vec![10.0 * 2f64.powf(j as f64 / 4.0), 10.0 * n as f64], 1.0).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector::dist;
    use crate::stabbing::{bodies_disjoint, min_piercing_number};

    #[test]
    fn second_family_meets_the_first() {
        let b1 = gen_unit_ball_grid(1, 1).unwrap();
        for j in 1..=4 {
            let b = gen_unit_ball_grid(2, j).unwrap();
            assert!(!bodies_disjoint(&b1, &b));
        }
        assert!(gen_unit_ball_grid(2, 5).is_err());
        assert!(gen_unit_ball_grid(1, 2).is_err());
    }

    #[test]
    fn far_rows_are_pairwise_disjoint() {
        let balls: Vec<_> = (3..=6).flat_map(|n| (1..=5).map(move |j| gen_unit_ball_grid(n, j).unwrap())).collect();
        for (i, a) in balls.iter().enumerate() {
            for b in &balls[i + 1..] {
                let (ca, _) = a.as_ball().unwrap();
                let (cb, _) = b.as_ball().unwrap();
                assert!(dist(ca, cb) >= 4.0);
            }
        }
    }

    #[test]
    fn first_two_families_pierced_by_their_centers() {
        let mut fam = vec![gen_unit_ball_grid(1, 1).unwrap()];
        fam.extend((1..=4).map(|j| gen_unit_ball_grid(2, j).unwrap()));
        for b in &fam {
            let (c, _) = b.as_ball().unwrap();
            assert!(b.contains(c, 0.0));
        }
        assert!(min_piercing_number(&fam).unwrap().count <= 5);
    }

    #[test]
    fn row_prefix_needs_one_point_per_ball() {
        for j in 1..=6 {
            let fam: Vec<_> = (1..=j).map(|k| gen_unit_ball_grid(5, k).unwrap()).collect();
            assert_eq!(min_piercing_number(&fam).unwrap().count, j as usize);
        }
    }
}
