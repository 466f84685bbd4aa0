//! Geometric transversal toolkit: piercing predicates and k-flat
//! transversals, interval and box stabbing, heterochromatic and
//! independent sequence builders, generators for the classic
//! counterexample families and finite-prefix property audits.

pub mod error;
pub mod families;
pub mod geometry;
pub mod io;
pub mod sequence;
pub mod stabbing;
pub mod transversal;
pub mod verifier;

pub use error::{Error, Result};
pub use geometry::*;
