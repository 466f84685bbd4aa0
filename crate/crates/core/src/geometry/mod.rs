//! Bodies, flats, distances, radii and the cone/ray regions.

pub mod body;
pub mod candidates;
pub mod distance;
pub mod flat;
pub mod planar;
pub mod radii;
pub mod regions;
pub mod vector;

pub use body::{AnyBody, CompoundBody, ConvexBody, Piece};
pub use distance::{alternating_projection, dist_body_flat, dist_point_body};
pub use flat::{dist_point_flat, KFlat};
pub use radii::{family_sigma, radii, RadiiReport};
pub use regions::{cone_contains, m_growth, ray_region_contains, Cone, RayRegion, RegionKind};
pub use vector::{central_projection, Direction, Point};
