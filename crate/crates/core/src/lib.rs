//! Third-order real IIR filters realized as first-order filters with
//! coefficients in the hypercomplex system Γ(e,3), together with the total
//! parametric sensitivity of both realizations and its minimization over the
//! two free parameters of the construction.

// Index loops mirror the matrix formulas; negated comparisons reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod dual;
pub mod error;
pub mod filter;
pub mod format;
pub mod linalg;
pub mod mpoly;
pub mod optimize;
pub mod poly;
pub mod scalar;
pub mod sensitivity;

pub use error::{Error, ErrorClass, Result};
