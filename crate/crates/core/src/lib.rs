//! Exact Lie and Leibniz cohomology of finite-dimensional and weight-graded
//! Lie algebras, the chain maps relating them, a symbolic differential graded
//! algebra for foliation forms, and rigidity certificates for secondary
//! characteristic classes.
//!
//! Everything is computed over the rationals; there is no floating point.

pub mod charmap;
pub mod cochain;
pub mod error;
pub mod exact;
pub mod forms;
pub mod homology;
pub mod liealg;
pub mod linalg;
pub mod maps;
pub mod rational;

pub use error::{Error, Result};
