//! Fixtures shared by the benchmarks.

use transversal_lab::families::{gen_lifted_rect, gen_tangent_rect, TangentIndex};
use transversal_lab::ConvexBody;

/// Unit disks on a slowly bending arc, so a line transversal exists for
/// short prefixes and the sweep has real work to do.
pub fn arc_disks(n: usize) -> Vec<ConvexBody> {
    (0..n)
        .map(|i| {
            let x = 3.0 * i as f64;
            ConvexBody::ball(vec![x, 0.002 * x * x], 1.0).unwrap()
        })
        .collect()
}

/// `B_n^(1)` for `n` in `2..2 + len`.
pub fn tangent_prefix(len: u32) -> Vec<ConvexBody> {
    (2..2 + len).map(|n| gen_tangent_rect(TangentIndex::new(n, 1).unwrap()).unwrap()).collect()
}

/// Lifted rectangles `n = 2..2 + len`, member `i`.
pub fn lifted_prefix(len: u32, i: u32) -> Vec<ConvexBody> {
    (2..2 + len).map(|n| gen_lifted_rect(n, i).unwrap()).collect()
}

/// Seeded spans for the interval routines.
pub fn spans(n: usize) -> Vec<(f64, f64)> {
    let mut s = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..n)
        .map(|_| {
            let a = 1000.0 * next();
            (a, a + 20.0 * next())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_requested_sizes() {
        assert_eq!(arc_disks(7).len(), 7);
        assert_eq!(tangent_prefix(5).len(), 5);
        assert_eq!(lifted_prefix(4, 1).len(), 4);
        assert!(spans(50).iter().all(|&(a, b)| a <= b));
    }
}
