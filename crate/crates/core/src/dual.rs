//! Forward-mode dual numbers with a single derivative channel.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::{Field, Ring};

/// `value + deriv·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub deriv: T,
}

impl<T: Field> Dual<T> {
    pub fn new(value: T, deriv: T) -> Self {
        Self { value, deriv }
    }

    /// A quantity that does not depend on the seeded parameter.
    pub fn constant(value: T) -> Self {
        Self::new(value, T::zero())
    }

    /// The seeded parameter itself (derivative one).
    pub fn variable(value: T) -> Self {
        Self::new(value, T::one())
    }

    pub fn map<U: Field>(self, f: impl Fn(T) -> U) -> Dual<U> {
        Dual::new(f(self.value), f(self.deriv))
    }
}

impl Dual<f64> {
    pub fn to_complex(self) -> Dual<Complex64> {
        self.map(|x| Complex64::new(x, 0.0))
    }
}

impl Dual<Complex64> {
    /// Derivative of the modulus `|value|`, via real and imaginary parts.
    /// Undefined (NaN) where the value is zero.
    pub fn modulus_deriv(&self) -> f64 {
        let m = self.value.norm();
        (self.value.re * self.deriv.re + self.value.im * self.deriv.im) / m
    }
}

impl<T: Field> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.deriv + rhs.deriv)
    }
}

impl<T: Field> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.deriv - rhs.deriv)
    }
}

impl<T: Field> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.deriv * rhs.value + self.value * rhs.deriv,
        )
    }
}

impl<T: Field> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q = self.value / rhs.value;
        Self::new(q, (self.deriv - q * rhs.deriv) / rhs.value)
    }
}

impl<T: Field> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, -self.deriv)
    }
}

impl<T: Field> Ring for Dual<T> {
    fn zero() -> Self {
        Self::constant(T::zero())
    }
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn from_real(x: f64) -> Self {
        Self::constant(T::from_real(x))
    }
    fn is_exact_zero(&self) -> bool {
        self.value.is_exact_zero() && self.deriv.is_exact_zero()
    }
}

impl<T: Field> Field for Dual<T> {
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }
}

impl<T: fmt::Display> fmt::Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.value, self.deriv)
    }
}
