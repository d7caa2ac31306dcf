//! Exact computations with almost complex structures, pseudo-holomorphic discs
//! and real hypersurfaces, carried out on truncated formal power series.

pub mod cli;
pub mod disc_solver;
pub mod error;
pub mod freeman;
pub mod geometry;
pub mod linalg;
pub mod rng;
pub mod scenario;
pub mod series;

pub use error::{Error, Result, SeriesError};
