//! Exact truncated power series and the algebra built on them.

pub mod disc;
pub mod json;
pub mod matrix;
pub mod multi;
pub mod scalar;

pub use disc::DiscMap;
pub use matrix::SeriesMatrix;
pub use multi::{ArithOp, Monomial, MultiSeries};
pub use scalar::{CScalar, Rational};
