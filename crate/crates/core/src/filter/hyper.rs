use num_complex::Complex64;

use super::transfer::ExpandedForm;
use super::FilterModel;
use crate::algebra::{HnsElement, GAMMA3};
use crate::error::Result;
use crate::poly::Poly;
use crate::scalar::Ring;

/// Names of the nine real parameters in [`HyperFilter1::parameters`] order.
pub const HYPER_PARAM_NAMES: [&str; 9] = ["a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"];

/// The two coefficient slots left free by the equivalence equations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeParams {
    pub a3: f64,
    pub b2: f64,
}

/// `H(z) = (A + B z⁻¹) / (e1 + C z⁻¹)` with `A, B, C ∈ Γ(e,3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperFilter1 {
    a: HnsElement<'static, f64>,
    b: HnsElement<'static, f64>,
    c: HnsElement<'static, f64>,
    free: FreeParams,
}

impl HyperFilter1 {
    pub fn new(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Self {
        let el = |v: [f64; 3]| HnsElement::from_reals(&GAMMA3, &v).expect("dimension 3");
        Self {
            a: el(a),
            b: el(b),
            c: el(c),
            free: FreeParams { a3: a[2], b2: b[1] },
        }
    }

    /// Inverse of [`Self::parameters`].
    pub fn from_parameters(p: &[f64; 9]) -> Self {
        Self::new([p[0], p[1], p[2]], [p[3], p[4], p[5]], [p[6], p[7], p[8]])
    }

    pub fn a(&self) -> &HnsElement<'static, f64> {
        &self.a
    }

    pub fn b(&self) -> &HnsElement<'static, f64> {
        &self.b
    }

    pub fn c(&self) -> &HnsElement<'static, f64> {
        &self.c
    }

    pub fn free(&self) -> FreeParams {
        self.free
    }

    /// `(a1, a2, a3, b1, b2, b3, c1, c2, c3)`
    pub fn parameter_array(&self) -> [f64; 9] {
        let mut p = [0.0; 9];
        p[..3].copy_from_slice(self.a.coeffs());
        p[3..6].copy_from_slice(self.b.coeffs());
        p[6..].copy_from_slice(self.c.coeffs());
        p
    }

    pub fn expand(&self) -> ExpandedForm<f64> {
        expand_params(&self.parameter_array())
    }

    /// Evaluates the rationalized real form at `z`.
    pub fn evaluate_rationalized(&self, z: Complex64) -> Result<Complex64> {
        self.expand().map(|&c| Complex64::new(c, 0.0)).eval(z.inv())
    }

    /// Evaluates `(A + B w)·(e1 + C w)⁻¹` in Γ(e,3) with complex scalars and
    /// returns the `e1` component.
    pub fn evaluate_direct(&self, z: Complex64) -> Result<Complex64> {
        let w = z.inv();
        let cplx = |x: &f64| Complex64::new(*x, 0.0);
        let a = self.a.map(cplx);
        let b = self.b.map(cplx);
        let c = self.c.map(cplx);
        let num = a + b.scale(&w);
        let den = HnsElement::identity(&GAMMA3) + c.scale(&w);
        let h = num.try_mul(&den.inverse()?)?;
        Ok(h.coeffs()[0])
    }
}

impl FilterModel for HyperFilter1 {
    fn parameters(&self) -> Vec<f64> {
        self.parameter_array().to_vec()
    }

    fn parameter_names(&self) -> &'static [&'static str] {
        &HYPER_PARAM_NAMES
    }

    fn rational_form<S: Ring>(&self, params: &[S]) -> ExpandedForm<S> {
        expand_params(params)
    }
}

/// Rationalizes `(A + B w) / (e1 + C w)` over Γ(e,3).
///
/// `params` holds `(a1, a2, a3, b1, b2, b3, c1, c2, c3)` in any scalar
/// ring. The numerator of the result is the `e1` component of
/// `(A + B w)·conj(e1 + C w)` and the denominator is `N(e1 + C w)`, both
/// computed with polynomial coefficients in `w`.
pub fn expand_params<S: Ring>(params: &[S]) -> ExpandedForm<S> {
    assert_eq!(params.len(), 9, "expected 9 filter parameters");
    let table = &*GAMMA3;
    let num = HnsElement::new(
        table,
        (0..3)
            .map(|k| Poly::linear(params[k].clone(), params[3 + k].clone()))
            .collect(),
    )
    .expect("dimension 3");
    let den = HnsElement::new(
        table,
        (0..3)
            .map(|k| {
                let c0 = if k == 0 { S::one() } else { S::zero() };
                Poly::linear(c0, params[6 + k].clone())
            })
            .collect(),
    )
    .expect("dimension 3");
    let rationalized = num.try_mul(&den.conjugate()).expect("same table");
    let e1 = rationalized.coeff(0);
    let norm = den.norm();
    ExpandedForm {
        numerator: std::array::from_fn(|k| e1.coeff(k)),
        denominator: std::array::from_fn(|k| norm.coeff(k + 1)),
    }
}

/// `(T, P, Q)`: the coefficients of `det(I + w·L_C)` beyond the constant 1,
/// i.e. the trace, the sum of principal 2×2 minors and the determinant of
/// the regular representation of `C`.
pub fn denominator_of<S: Ring>(c: &[S]) -> [S; 3] {
    let l = HnsElement::new(&GAMMA3, c.to_vec())
        .expect("dimension 3")
        .regular_rep();
    let g = |r: usize, k: usize| l.get(r, k).clone();
    let minors = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0))
        + (g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0))
        + (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1));
    [l.trace(), minors, l.det()]
}
