//! Triangle shape space: conversions between shape coordinates, random
//! triangle models, constructions on the shape hemisphere and uniformity
//! tests.

pub mod cli;
pub mod conversions;
pub mod error;
pub mod frame;
pub mod geometry;
pub mod linalg;
pub mod quadrature;
pub mod random;
pub mod special;
pub mod uniformity;

pub use error::{Result, ShapeError};
