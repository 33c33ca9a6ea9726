//! Real third-order filters and their first-order Γ(e,3) realizations.

pub mod closed_form;
mod hyper;
mod solve;
mod transfer;

pub use hyper::{denominator_of, expand_params, FreeParams, HyperFilter1, HYPER_PARAM_NAMES};
pub use solve::{
    convert, numerator_system, round_trip_residual, solve_denominator, solve_denominator_with,
    solve_numerator, Branch, NewtonConfig, Synthesizer, MAX_CONDITION,
};
pub use transfer::{ExpandedForm, RealTransfer3, POLE_TOL};

use crate::scalar::Ring;

/// A filter whose transfer function is a real rational function of `w = z⁻¹`
/// with coefficients depending polynomially on a vector of real parameters.
pub trait FilterModel: Sync {
    fn parameters(&self) -> Vec<f64>;

    fn parameter_names(&self) -> &'static [&'static str];

    /// Transfer-function coefficients for an arbitrary parameter vector in
    /// any scalar ring (reals, dual numbers, polynomials).
    fn rational_form<S: Ring>(&self, params: &[S]) -> ExpandedForm<S>;
}
