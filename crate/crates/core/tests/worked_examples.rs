//! Small hand-checkable instances of the constructions.

use transversal_lab::families::{
    gen_ai_packing, gen_lifted_rect, gen_tangent_rect, gen_unit_ball_grid, lds_of_bodies, Lattice, TangentIndex,
};
use transversal_lab::stabbing::min_piercing_number;
use transversal_lab::transversal::{common_point, has_pq_property, is_k_dependent, line_transversal_2d, transversal, DEFAULT_BUDGET};
use transversal_lab::verifier::{audit_strict_heterochromatic, Coverage, Verdict};
use transversal_lab::{dist_body_flat, ConvexBody};

fn disk(x: f64, y: f64) -> ConvexBody {
    ConvexBody::ball(vec![x, y], 1.0).unwrap()
}

#[test]
fn grid_center_meets_each_outer_ball() {
    let b1 = gen_unit_ball_grid(1, 1).unwrap();
    let ring: Vec<ConvexBody> = (1..=4).map(|j| gen_unit_ball_grid(2, j).unwrap()).collect();
    for b in &ring {
        let pair = [b1.clone(), b.clone()];
        let ans = common_point(&pair).unwrap();
        let w = ans.witness().expect("pair should share a point");
        for body in &pair {
            assert!(dist_body_flat(body, w).unwrap() <= 1e-7);
        }
    }
    // opposite outer balls sit 3 apart, so no point is in all five
    let mut five = vec![b1];
    five.extend(ring);
    assert!(common_point(&five).unwrap().is_certified_empty());
}

#[test]
fn grid_rows_are_independent() {
    let row: Vec<ConvexBody> = (1..=5).map(|j| gen_unit_ball_grid(3, j).unwrap()).collect();
    assert_eq!(row[0].as_ball().unwrap().0.to_vec(), vec![4.0, 12.0]);
    assert!(is_k_dependent(&row, 0).unwrap().is_none());
    assert_eq!(min_piercing_number(&row[..4]).unwrap().count, 4);
}

#[test]
fn tangent_prefix_has_two_two_property() {
    let first: Vec<ConvexBody> = (2..=6).map(|n| gen_tangent_rect(TangentIndex::new(n, 1).unwrap()).unwrap()).collect();
    let report = has_pq_property(&first, 2, 2, 0).unwrap();
    assert!(report.holds, "{:?}", report.counterexample);
}

#[test]
fn tangent_corners_approach_the_limit() {
    let a = TangentIndex::new(16, 1).unwrap().a();
    assert!(((a[0] - 1.0).powi(2) + (a[1] - 1.0).powi(2)).sqrt() < 1e-3, "{a:?}");
    let b = TangentIndex::new(400, 1).unwrap().b();
    assert!((b[0] - 1.0).abs() < 1e-3 && b[1].abs() < 1e-3, "{b:?}");
}

#[test]
fn lifted_triple_has_a_line() {
    let triple: Vec<ConvexBody> = (2..=4).map(|n| gen_lifted_rect(n, 1).unwrap()).collect();
    let ans = transversal(1, &triple, DEFAULT_BUDGET).unwrap();
    let w = ans.witness().expect("lifted rectangles should share a line");
    for b in &triple {
        assert!(dist_body_flat(b, w).unwrap() <= 1e-7);
    }
}

#[test]
fn lifted_directions_collapse_to_one() {
    let bodies: Vec<ConvexBody> = (2..=60).map(|n| gen_lifted_rect(n, 1).unwrap()).collect();
    let est = lds_of_bodies(&bodies, 10.0, 0.25).unwrap();
    assert_eq!(est.span_dim, 1);
    assert!(est.k_unbounded(1) && !est.k_unbounded(2));
}

#[test]
fn near_collinear_disks() {
    let disks = [disk(0.0, 0.0), disk(4.0, 0.0), disk(8.0, 1.5)];
    let ans = line_transversal_2d(&disks).unwrap();
    assert!(ans.is_pierced());
    // pushed one unit further up the third disk is out of reach
    let far = [disk(0.0, 0.0), disk(4.0, 0.0), disk(8.0, 5.0)];
    assert!(line_transversal_2d(&far).unwrap().is_certified_empty());
}

// Two base disks plus packed families: any selection has a line through
// both base members and its packed ball.
#[test]
fn packed_region_selections_are_dependent() {
    let base = vec![disk(0.0, 0.0), disk(10.0, 0.0)];
    let mut families: Vec<Vec<ConvexBody>> = base.iter().map(|b| vec![b.clone()]).collect();
    for i in 0..4 {
        let x0 = 12.0 + 8.0 * i as f64;
        let packed = gen_ai_packing(&base, 1, (&[x0, -4.0], &[x0 + 8.0, 4.0]), Lattice::Hexagonal).unwrap();
        assert!(!packed.is_empty(), "empty packing at {x0}");
        families.push(packed);
    }
    let report = audit_strict_heterochromatic(&families, 1, 200, 3).unwrap();
    assert_eq!(report.verdict, Verdict::Holds);
    assert!(matches!(report.coverage, Coverage::Sampled { count: 200, .. } | Coverage::Exhaustive { .. }));
    for c in &report.certificates {
        let seq: Vec<ConvexBody> = c.selection.iter().map(|&(f, j)| families[f][j].clone()).collect();
        assert!(c.certificate.verify(&seq));
    }
}
