//! Explicit polynomial forms of the expansion coefficients.
//!
//! The symbolic expansion, obtained by running the rationalization over
//! multivariate polynomials, is authoritative. A published transcription
//! (with two misprints) and its corrected copy are kept for comparison;
//! [`compare`] lists the monomials where a closed form departs from it.

use super::hyper::{expand_params, HYPER_PARAM_NAMES};
use super::transfer::ExpandedForm;
use crate::mpoly::{monomial_string, MPoly};

/// Row labels, in `(k0, K, M, L, T, P, Q)` order.
pub const COEFF_NAMES: [&str; 7] = ["a1", "K", "M", "L", "T", "P", "Q"];

/// The seven coefficient polynomials in the nine filter parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub coeffs: [MPoly; 7],
}

/// Terms are `(coefficient, "v1 v2^2 …")`.
type Terms = &'static [(f64, &'static str)];

const PRINTED: [Terms; 7] = [
    &[(1.0, "a1")],
    &[
        (1.0, "a2 c2"),
        (-1.0, "a3 c3"),
        (-3.0, "a1 c3"),
        (2.0, "a1 c1"),
        (1.0, "b1"),
    ],
    &[
        (-2.0, "b3 c3"),
        (1.0, "c2 a2 c3"),
        (1.0, "c2 a2 c1"),
        (-3.0, "a1 c1 c3"),
        (1.0, "c2 b2"),
        (-2.0, "a3 c1 c3"),
        (4.0, "a3 c3^2"),
        (2.0, "a1 c2^2"),
        (1.0, "a1 c1^2"),
        (2.0, "a3 c2^2"),
        (-3.0, "b1 c3"),
        (2.0, "a1 c3^2"),
        (2.0, "b1 c1"),
    ],
    &[
        (1.0, "c2 b2 c3"),
        (1.0, "b1 c1^2"),
        (-2.0, "b3 c1 c3"),
        (1.0, "c2 b2 c1"),
        (2.0, "b1 c2^2"),
        (-3.0, "b1 c1 c3"),
        (2.0, "b1 c3^2"),
        (2.0, "b3 c2^2"),
        (4.0, "b3 c3^2"),
    ],
    &[(3.0, "c1"), (-3.0, "c2")],
    &[(-6.0, "c1 c3"), (3.0, "c2^2"), (3.0, "c1^2")],
    &[
        (3.0, "c1 c2^2"),
        (3.0, "c2^2 c3"),
        (1.0, "c1^3"),
        (-3.0, "c1^2 c3"),
        (4.0, "c3^3"),
    ],
];

fn parse_monomial(text: &str) -> Vec<u32> {
    let mut exps = vec![0u32; 9];
    for factor in text.split_whitespace() {
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (n, p.parse::<u32>().expect("valid exponent")),
            None => (factor, 1),
        };
        let idx = HYPER_PARAM_NAMES
            .iter()
            .position(|&v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        exps[idx] += power;
    }
    exps
}

fn build(terms: Terms) -> MPoly {
    terms.iter().fold(MPoly::default(), |acc, &(c, m)| {
        acc + MPoly::monomial(parse_monomial(m), c)
    })
}

impl ClosedForm {
    /// The published transcription, misprints included.
    pub fn printed() -> Self {
        Self {
            coeffs: PRINTED.map(build),
        }
    }

    /// Printed formulas with the two known misprints fixed: `T = 3c1 − 3c3`
    /// and `−2·a3·c3` in `K`.
    pub fn corrected() -> Self {
        let mut f = Self::printed();
        f.coeffs[1] = f.coeffs[1].clone() + MPoly::monomial(parse_monomial("a3 c3"), -1.0);
        f.coeffs[4] = build(&[(3.0, "c1"), (-3.0, "c3")]);
        f
    }

    /// Expansion coefficients generated by the hypercomplex rationalization
    /// with symbolic parameters.
    pub fn symbolic() -> Self {
        let vars: Vec<MPoly> = (0..9).map(|i| MPoly::var(i, 9)).collect();
        let e = expand_params(&vars);
        let [n0, n1, n2, n3] = e.numerator;
        let [d1, d2, d3] = e.denominator;
        Self {
            coeffs: [n0, n1, n2, n3, d1, d2, d3],
        }
    }

    pub fn evaluate(&self, params: &[f64; 9]) -> ExpandedForm<f64> {
        let v: [f64; 7] = std::array::from_fn(|k| self.coeffs[k].eval(params));
        ExpandedForm {
            numerator: [v[0], v[1], v[2], v[3]],
            denominator: [v[4], v[5], v[6]],
        }
    }
}

/// One monomial whose coefficient differs between two closed forms.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialDiscrepancy {
    pub coefficient: &'static str,
    pub monomial: String,
    pub candidate: f64,
    pub reference: f64,
}

/// Monomials where `candidate` departs from `reference`.
pub fn compare(candidate: &ClosedForm, reference: &ClosedForm) -> Vec<MonomialDiscrepancy> {
    let mut out = Vec::new();
    for (k, name) in COEFF_NAMES.iter().enumerate() {
        let diff = candidate.coeffs[k].clone() - reference.coeffs[k].clone();
        for (m, _) in diff.terms() {
            out.push(MonomialDiscrepancy {
                coefficient: name,
                monomial: monomial_string(m, &HYPER_PARAM_NAMES),
                candidate: candidate.coeffs[k].coeff(m),
                reference: reference.coeffs[k].coeff(m),
            });
        }
    }
    out
}
