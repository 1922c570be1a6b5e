//! Projective spaces and their products, equivariant locally free sheaves,
//! Čech cochains, cohomology, cup products and integration.

mod cochain;
mod complex;
mod mixed;
mod sheaf;
mod variety;

pub use cochain::{cup, BundleMap, CechCochain, FrameMap, Pairing};
pub use complex::{
    cech_cohomology, cohomology_dims, euler_characteristic, CechComplex, Cohomology, Weight,
    WindowOptions, DEFAULT_MAX_WINDOW,
};
pub use mixed::{Forms, Integrator, MixedClass};
pub use sheaf::{
    canonical, cotangent, cotangent_frame, direct_sum, dual, hom, line_bundle, multisets, omega,
    structure_sheaf, subsets, sym_power, tangent, tensor, twist, wedge_index, wedge_power, Sheaf,
};
pub use variety::{product, projective_space, Variety};
