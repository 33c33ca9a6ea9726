use num_complex::Complex64;
use serde::Deserialize;

use super::FilterModel;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Denominators smaller than this are treated as poles.
pub const POLE_TOL: f64 = 1e-12;

/// `H(w) = (n0 + n1 w + n2 w² + n3 w³) / (1 + d1 w + d2 w² + d3 w³)` with
/// `w = z⁻¹`.
///
/// For the hypercomplex realization these are the rationalized coefficients
/// `(a1, K, M, L)` over `(T, P, Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedForm<S> {
    pub numerator: [S; 4],
    pub denominator: [S; 3],
}

impl<S: Ring> ExpandedForm<S> {
    pub fn map<U: Ring>(&self, f: impl Fn(&S) -> U) -> ExpandedForm<U> {
        ExpandedForm {
            numerator: std::array::from_fn(|k| f(&self.numerator[k])),
            denominator: std::array::from_fn(|k| f(&self.denominator[k])),
        }
    }
}

impl<S: Field> ExpandedForm<S> {
    pub fn numerator_at(&self, w: S) -> S {
        self.numerator
            .iter()
            .rev()
            .fold(S::zero(), |acc, &c| acc * w + c)
    }

    pub fn denominator_at(&self, w: S) -> S {
        self.denominator
            .iter()
            .rev()
            .fold(S::zero(), |acc, &c| acc * w + c)
            * w
            + S::one()
    }

    /// Rational evaluation at `w = z⁻¹`; a vanishing denominator is reported
    /// as a near-zero norm (the denominator is the norm of `1 + C·w`).
    pub fn eval(&self, w: S) -> Result<S> {
        let den = self.denominator_at(w);
        if den.magnitude() < POLE_TOL {
            return Err(Error::NearZeroNorm {
                norm: den.magnitude(),
            });
        }
        Ok(self.numerator_at(w) / den)
    }
}

impl ExpandedForm<f64> {
    /// Largest coefficient difference to `other`.
    pub fn max_deviation(&self, other: &ExpandedForm<f64>) -> f64 {
        self.numerator
            .iter()
            .zip(&other.numerator)
            .chain(self.denominator.iter().zip(&other.denominator))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Third-order real filter
/// `(φ0 + φ1 z⁻¹ + φ2 z⁻² + φ3 z⁻³) / (1 + ψ1 z⁻¹ + ψ2 z⁻² + ψ3 z⁻³)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealTransfer3 {
    /// `φ0..φ3`
    pub num: [f64; 4],
    /// `ψ1..ψ3`; the leading denominator coefficient is 1.
    pub den: [f64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FilterFile {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl RealTransfer3 {
    pub fn new(num: [f64; 4], den: [f64; 3]) -> Result<Self> {
        if num.iter().chain(&den).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "filter coefficients must be finite".into(),
            ));
        }
        Ok(Self { num, den })
    }

    /// The worked third-order example used throughout the tests.
    pub fn reference() -> Self {
        Self {
            num: [0.287589, 0.6888683, 0.6888683, 0.287589],
            den: [0.418204, 0.473048, 0.061292],
        }
    }

    /// `H = 1`.
    pub fn identity() -> Self {
        Self {
            num: [1.0, 0.0, 0.0, 0.0],
            den: [0.0, 0.0, 0.0],
        }
    }

    /// Parses `num = [φ0, φ1, φ2, φ3]` and `den = [ψ1, ψ2, ψ3]`.
    pub fn parse(text: &str) -> Result<Self> {
        let file: FilterFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let num: [f64; 4] =
            file.num.as_slice().try_into().map_err(|_| {
                Error::Parse(format!("`num` needs 4 values, got {}", file.num.len()))
            })?;
        let den: [f64; 3] =
            file.den.as_slice().try_into().map_err(|_| {
                Error::Parse(format!("`den` needs 3 values, got {}", file.den.len()))
            })?;
        Self::new(num, den).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_file_string(&self) -> String {
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("num = [{}]\nden = [{}]\n", join(&self.num), join(&self.den))
    }

    pub fn form(&self) -> ExpandedForm<f64> {
        ExpandedForm {
            numerator: self.num,
            denominator: self.den,
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        self.form().map(|&c| Complex64::new(c, 0.0)).eval(z.inv())
    }

    /// All poles strictly inside the unit circle (Schur–Cohn step-down).
    pub fn is_stable(&self) -> bool {
        let mut a = vec![1.0, self.den[0], self.den[1], self.den[2]];
        while a.len() > 1 {
            let n = a.len() - 1;
            let k = a[n] / a[0];
            if !(k.abs() < 1.0) {
                return false;
            }
            let scale = 1.0 - k * k;
            a = (0..n).map(|i| (a[i] - k * a[n - i]) / scale).collect();
        }
        true
    }
}

impl FilterModel for RealTransfer3 {
    fn parameters(&self) -> Vec<f64> {
        self.num.iter().chain(&self.den).copied().collect()
    }

    fn parameter_names(&self) -> &'static [&'static str] {
        &["phi0", "phi1", "phi2", "phi3", "psi1", "psi2", "psi3"]
    }

    fn rational_form<S: Ring>(&self, params: &[S]) -> ExpandedForm<S> {
        ExpandedForm {
            numerator: std::array::from_fn(|k| params[k].clone()),
            denominator: std::array::from_fn(|k| params[4 + k].clone()),
        }
    }
}
