//! Sparse multivariate polynomials with real coefficients.
//!
//! Running the hypercomplex rationalization with these as scalars yields the
//! expansion coefficients as explicit monomial sums, which is what the
//! printed closed forms are compared against.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Ring;

/// Exponent vector; index `i` is the power of variable `i`.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, f64>,
}

impl MPoly {
    /// The polynomial `x_index` in a ring of `nvars` variables.
    pub fn var(index: usize, nvars: usize) -> Self {
        let mut m = vec![0; nvars];
        m[index] = 1;
        Self::monomial(m, 1.0)
    }

    pub fn monomial(exponents: Monomial, coeff: f64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0.0 {
            terms.insert(trim(exponents), coeff);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &[u32]) -> f64 {
        self.terms.get(&trim(m.to_vec())).copied().unwrap_or(0.0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, &c)| {
                m.iter()
                    .enumerate()
                    .fold(c, |acc, (i, &e)| acc * values[i].powi(e as i32))
            })
            .sum()
    }

    fn accumulate(&mut self, m: Monomial, c: f64) {
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0.0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if c != 0.0 {
                    e.insert(c);
                }
            }
        }
    }

    /// Renders with the given variable names, e.g. `2·a1·c1 - 3·a1·c3`.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }
}

/// Trailing zero exponents are dropped so monomials from rings of different
/// width compare equal.
fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mul_monomials(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

pub fn monomial_string(m: &[u32], names: &[&str]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].to_string()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("·")
    }
}

struct DisplayWith<'a> {
    poly: &'a MPoly,
    names: &'a [&'a str],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, &c)) in self.poly.terms.iter().enumerate() {
            let sign = if c < 0.0 { "-" } else { "+" };
            if k == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono = monomial_string(m, self.names);
            if c.abs() == 1.0 && mono != "1" {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}·{mono}", c.abs())?;
            }
        }
        Ok(())
    }
}

impl Add for MPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul for MPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = MPoly::default();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.accumulate(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::monomial(Vec::new(), 1.0)
    }
    fn from_real(x: f64) -> Self {
        Self::monomial(Vec::new(), x)
    }
    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_cancels_exactly() {
        let x = MPoly::var(0, 2);
        let y = MPoly::var(1, 2);
        // (x + y)(x - y) = x^2 - y^2
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[2]), 1.0);
        assert_eq!(p.coeff(&[0, 2]), -1.0);
        assert_eq!(p.eval(&[3.0, 2.0]), 5.0);
        assert_eq!(p.display_with(&["x", "y"]).to_string(), "-y^2 + x^2");
    }
}
