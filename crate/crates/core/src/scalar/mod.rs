//! Scalar side of the library: representing functions, power-mean paths,
//! and the one-dimensional maximizations behind the reverse constants.

mod constants;
pub mod maximize;
mod mean;
mod path;

pub use constants::{
    closed_form_weighted_constant, gamma_constant, geometric_path_closed_form, lee_constant,
    path_composition_weight, ratio_interval, reverse_constants, secant_coefficients,
    theorem25_constants, zeta_constant, ReverseConstants, SpectralBounds, COLLAPSE_WIDTH,
};
pub use mean::{dual_descriptor, representing_value, MeanDescriptor, MeanKind, ScalarFn};
pub use path::{path_value, power_mean, ratio_value};
