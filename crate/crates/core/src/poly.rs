//! Dense univariate polynomials over a [`Ring`].
//!
//! Used as the scalar type of hypercomplex elements whose coefficients are
//! polynomials in the delay variable `w = z⁻¹`, which is how the first-order
//! hypercomplex filter is rationalized into a real third-order one.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, Ring};

/// `coeffs[k]` multiplies `w^k`. No trailing-zero normalization is done,
/// so two polynomials compare by value only through [`Poly::coeff`].
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `c0 + c1·w`
    pub fn linear(c0: T, c1: T) -> Self {
        Self {
            coeffs: vec![c0, c1],
        }
    }

    /// Coefficient of `w^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, w: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * w.clone() + c.clone())
    }

    fn zip_with(self, rhs: Self, f: impl Fn(T, T) -> T) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut a = self.coeffs.into_iter();
        let mut b = rhs.coeffs.into_iter();
        let coeffs = (0..n)
            .map(|_| {
                f(
                    a.next().unwrap_or_else(T::zero),
                    b.next().unwrap_or_else(T::zero),
                )
            })
            .collect();
        Self { coeffs }
    }
}

impl<T: Field> Poly<T> {
    pub fn eval_field(&self, w: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * w + c)
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self { coeffs: Vec::new() };
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let acc = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = acc + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn from_real(x: f64) -> Self {
        if x == 0.0 {
            Self::zero()
        } else {
            Self::constant(T::from_real(x))
        }
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_exact_zero)
    }
}
