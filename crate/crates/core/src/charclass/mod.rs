//! Atiyah classes, Chern character, Todd class, the L-operator and the
//! verifiers for the identities they satisfy.

mod classes;
mod ext;
mod lop;
mod verify;

pub use classes::{at_power, atiyah_cocycle, chart_differential, trace_class, Geometry, HrrReport};
pub use ext::{
    form_action, permute_factors, skew_map, swap_map, trace_map, wedge_class, wedge_map, ExtClass,
};
pub use lop::{adjoint, forms_times_cotangent, l_operator, l_operator_with, Carried, LComponent};
pub use verify::{
    verify_at_jacobi, verify_at_naturality, verify_at_symmetry, verify_at_tensor, verify_ch_ring,
    verify_l_adjoint, verify_td_annihilation, ComponentReport, Report, Status,
};
