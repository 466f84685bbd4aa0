//! Deterministic generators for the explicit constructions: tangent
//! rectangles and triangles with their lifts and the escape procedure,
//! unit-ball grids, balls with tails, packed regions and limiting-direction
//! estimates.

mod grid;
mod lds;
mod packing;
mod tail;
mod tangent;

pub use grid::{gen_unit_ball_grid, grid_stream, nested_cone_stream, row_stream};
pub use lds::{lds_estimate, lds_of_bodies, LdsEstimate};
pub use packing::{ai_region_member, ai_region_witness, gen_ai_packing, Lattice};
pub use tail::{compounds_meet, gen_ball_with_tail, TAIL_RHO};
pub use tangent::{
    escape_rectangle, gen_lifted_rect, gen_right_triangles, gen_tangent_rect, verify_pairwise_intersection,
    verify_triangle_intersections, EscapeCertificate, IntersectionReport, TangentIndex,
};
