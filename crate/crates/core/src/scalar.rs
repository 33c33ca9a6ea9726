//! Scalar rings used as coefficients of hypercomplex elements.
//!
//! Hypercomplex arithmetic only needs ring operations, so the same table
//! driven code runs over plain reals, complex numbers, dual numbers and
//! polynomials in the delay variable. Division is only required by
//! [`Field`] users (inversion, rational evaluation).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Embeds a real constant (structure constants, literals).
    fn from_real(x: f64) -> Self;
    /// Exact zero test; used to keep sparse representations small.
    fn is_exact_zero(&self) -> bool;
}

/// A ring where nonzero elements can be divided by.
pub trait Field: Ring + Copy + Div<Output = Self> {
    /// Size of the value used for tolerance decisions. For dual numbers this
    /// is the size of the primal part.
    fn magnitude(&self) -> f64;
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Field for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}
