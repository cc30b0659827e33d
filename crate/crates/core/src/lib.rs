pub mod cli;
pub mod complex;
pub mod error;
pub mod fan;
pub mod generators;
pub mod linalg;
pub mod matroid;
pub mod polytope;
pub mod strata;

pub use error::{Error, Result};
