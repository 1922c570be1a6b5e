//! Exact computations around Hochschild cohomology, Atiyah classes and the
//! Riemann-Roch formula on projective spaces and their products.
//!
//! Everything is exact: scalars are big rationals, cohomology is computed
//! one torus weight at a time with exact elimination, and every identity is
//! checked by solving for a coboundary.

pub mod cech;
pub mod charclass;
pub mod error;
pub mod expr;
pub mod hochschild;
pub mod polyalg;
pub mod ratseries;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
