//! Exact and floating-point projective geometry of pencils, polygons and
//! bisector configurations.

pub mod error;
pub mod euclid;
pub mod generate;
pub mod pencil;
pub mod polygon;
pub mod projective;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{GeomError, Result};
pub use projective::*;
pub use scalar::{Approx, Rational, Scalar};
