//! Laurent polynomials, exterior algebra and exact linear algebra.

mod exterior;
mod laurent;
mod matrix;
pub mod sparse;

pub use exterior::{
    bar_sign, canonical_pairing, contract, extract_sign, involution_bar, merge, merge_sign,
    sort_sign, wedge, ExteriorElement, ExteriorKind,
};
pub use laurent::{Exponent, LaurentPoly};
pub use matrix::{solve_linear, ExactMatrix, Rref};

use crate::cech::{Integrator, MixedClass};
use crate::error::Result;
use crate::scalar::ExactScalar;

/// `<a, b> = integral of the top-degree part of bar(a) * b`.
pub fn top_pairing(a: &MixedClass, b: &MixedClass, integrator: &Integrator) -> Result<ExactScalar> {
    let prod = a.bar().mul(b)?;
    integrator.integrate_mixed(&prod)
}
