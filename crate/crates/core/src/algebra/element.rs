use std::ops::{Add, Mul, Neg, Sub};

use super::table::AlgebraTable;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Relative tolerance factor for [`HnsElement::inverse`]: the element is
/// treated as singular when `|N(x)| ≤ SINGULAR_TOL · max|x_k|^dim`.
pub const SINGULAR_TOL: f64 = 1e-12;

/// An element `Σ x_k e_k` of the algebra described by `table`, with
/// coefficients in the scalar ring `S`.
#[derive(Clone, Debug)]
pub struct HnsElement<'t, S> {
    table: &'t AlgebraTable,
    coeffs: Vec<S>,
}

/// Matrix of left multiplication by a fixed element: column `j` holds the
/// coordinates of `x·e_j`. Stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<'t, S: Ring> HnsElement<'t, S> {
    pub fn new(table: &'t AlgebraTable, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != table.dim() {
            return Err(Error::DimensionMismatch {
                expected: table.dim(),
                got: coeffs.len(),
            });
        }
        Ok(Self { table, coeffs })
    }

    pub fn from_reals(table: &'t AlgebraTable, values: &[f64]) -> Result<Self> {
        Self::new(table, values.iter().map(|&v| S::from_real(v)).collect())
    }

    pub fn zero(table: &'t AlgebraTable) -> Self {
        Self {
            table,
            coeffs: vec![S::zero(); table.dim()],
        }
    }

    /// The identity `e1`.
    pub fn identity(table: &'t AlgebraTable) -> Self {
        Self::basis(table, 0)
    }

    /// Basis element `e_{k+1}` (zero-based `k`).
    pub fn basis(table: &'t AlgebraTable, k: usize) -> Self {
        let mut e = Self::zero(table);
        e.coeffs[k] = S::one();
        e
    }

    pub fn table(&self) -> &'t AlgebraTable {
        self.table
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn same_table(&self, other: &Self) -> bool {
        std::ptr::eq(self.table, other.table) || self.table == other.table
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&S) -> U) -> HnsElement<'t, U> {
        HnsElement {
            table: self.table,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// Product through the structure constants; fails when the operands
    /// come from different tables.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_table(other) {
            return Err(Error::TableMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.table.dim();
        let mut out = vec![S::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_exact_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_exact_zero() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (k, &g) in self.table.product(i, j).iter().enumerate() {
                    if g == 0.0 {
                        continue;
                    }
                    let term = if g == 1.0 {
                        xy.clone()
                    } else {
                        xy.clone() * S::from_real(g)
                    };
                    let acc = std::mem::replace(&mut out[k], S::zero());
                    out[k] = acc + term;
                }
            }
        }
        Self {
            table: self.table,
            coeffs: out,
        }
    }

    pub fn regular_rep(&self) -> RepMatrix<S> {
        let n = self.table.dim();
        let mut entries = vec![S::zero(); n * n];
        for j in 0..n {
            let col = self.mul_unchecked(&Self::basis(self.table, j));
            for (k, c) in col.coeffs.into_iter().enumerate() {
                entries[k * n + j] = c;
            }
        }
        RepMatrix { dim: n, entries }
    }

    /// `N(x) = det L_x`.
    pub fn norm(&self) -> S {
        self.regular_rep().det()
    }

    /// `adj(L_x)·e1`, so that `x·conj(x) = N(x)·e1`.
    pub fn conjugate(&self) -> Self {
        let adj = self.regular_rep().adjugate();
        let n = self.table.dim();
        // Identity coordinates are (1, 0, …, 0), so this is column 0.
        let coeffs = (0..n).map(|k| adj.get(k, 0).clone()).collect();
        Self {
            table: self.table,
            coeffs,
        }
    }
}

impl<'t, S: Field> HnsElement<'t, S> {
    /// Largest coefficient magnitude.
    pub fn scale_magnitude(&self) -> f64 {
        self.coeffs.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// `conj(x) / N(x)`.
    pub fn inverse(&self) -> Result<Self> {
        let norm = self.norm();
        let scale = self.scale_magnitude();
        let threshold = SINGULAR_TOL * scale.powi(self.table.dim() as i32);
        if !(norm.magnitude() > threshold) {
            return Err(Error::NearZeroNorm {
                norm: norm.magnitude(),
            });
        }
        let conj = self.conjugate();
        Ok(conj.map(|&c| c / norm))
    }
}

impl<S: PartialEq> PartialEq for HnsElement<'_, S> {
    fn eq(&self, other: &Self) -> bool {
        (std::ptr::eq(self.table, other.table) || self.table == other.table)
            && self.coeffs == other.coeffs
    }
}

impl<S: Ring> Add for HnsElement<'_, S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert!(self.same_table(&rhs), "operands belong to different tables");
        let coeffs = self
            .coeffs
            .into_iter()
            .zip(rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            table: self.table,
            coeffs,
        }
    }
}

impl<S: Ring> Sub for HnsElement<'_, S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Ring> Neg for HnsElement<'_, S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            table: self.table,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// Panics on a table mismatch; use [`HnsElement::try_mul`] to get an error.
impl<S: Ring> Mul for HnsElement<'_, S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs)
            .expect("operands belong to different tables")
    }
}

impl<S: Ring> RepMatrix<S> {
    pub fn from_rows(dim: usize, entries: Vec<S>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        (0..self.dim)
            .map(|r| {
                (0..self.dim).fold(S::zero(), |acc, c| {
                    acc + self.get(r, c).clone() * v[c].clone()
                })
            })
            .collect()
    }

    /// Cofactor expansion; division-free so it works over any ring.
    pub fn det(&self) -> S {
        let rows: Vec<usize> = (0..self.dim).collect();
        let cols = rows.clone();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> S {
        match rows.len() {
            0 => S::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                self.get(rows[0], cols[0]).clone() * self.get(rows[1], cols[1]).clone()
                    - self.get(rows[0], cols[1]).clone() * self.get(rows[1], cols[0]).clone()
            }
            _ => {
                let sub_rows = &rows[1..];
                let mut acc = S::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_exact_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a.clone() * self.minor_det(sub_rows, &sub_cols);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// Transposed cofactor matrix: `M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.minor_det(&rows, &cols);
                entries[i * n + j] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        Self { dim: n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GAMMA3, RC};
    use num_complex::Complex64;

    fn el(v: [f64; 3]) -> HnsElement<'static, f64> {
        HnsElement::from_reals(&GAMMA3, &v).unwrap()
    }

    #[test]
    fn basis_products() {
        let e2 = HnsElement::<f64>::basis(&GAMMA3, 1);
        let e3 = HnsElement::<f64>::basis(&GAMMA3, 2);
        assert_eq!((e2.clone() * e3.clone()).coeffs(), &[0.0, -2.0, 0.0]);
        assert_eq!((e2.clone() * e2).coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!((e3.clone() * e3).coeffs(), &[2.0, 0.0, -1.0]);

        let big_e3 = HnsElement::<f64>::basis(&RC, 2);
        assert_eq!((big_e3.clone() * big_e3).coeffs(), &[0.0, -1.0, 0.0]);
    }

    #[test]
    fn identity_is_neutral() {
        let x = el([0.3, -1.7, 2.2]);
        let e1 = HnsElement::identity(&GAMMA3);
        assert_eq!((e1 * x.clone()).coeffs(), x.coeffs());
    }

    #[test]
    fn regular_rep_columns_by_hand() {
        let (c1, c2, c3) = (0.7, -1.3, 0.4);
        let l = el([c1, c2, c3]).regular_rep();
        let expected = [
            [c1, -c2, 2.0 * c3],
            [c2, c1 - 2.0 * c3, -2.0 * c2],
            [c3, c2, c1 - c3],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert!((l.get(r, c) - expected[r][c]).abs() < 1e-15, "({r},{c})");
            }
        }
        let id = HnsElement::<f64>::identity(&GAMMA3).regular_rep();
        assert_eq!(
            id,
            RepMatrix::from_rows(3, vec![1., 0., 0., 0., 1., 0., 0., 0., 1.])
        );
    }

    #[test]
    fn reference_c_trace_and_norm() {
        let c = el([0.1403252267, -0.3718209092, 0.0009238933689]);
        assert!((c.regular_rep().trace() - 0.418204).abs() < 1e-9);
        assert!((c.norm() - 0.061292).abs() < 1e-5);
    }

    #[test]
    fn conjugate_and_inverse() {
        let e1 = HnsElement::<f64>::identity(&GAMMA3);
        assert_eq!(e1.conjugate(), e1);
        assert_eq!(e1.norm(), 1.0);
        assert_eq!(e1.inverse().unwrap(), e1);
        assert_eq!(
            el([2.0, 0.0, 0.0]).inverse().unwrap().coeffs(),
            &[0.5, 0.0, 0.0]
        );

        let x = el([0.5, 1.25, -0.75]);
        let p = x.clone() * x.conjugate();
        assert!((p.coeffs()[0] - x.norm()).abs() < 1e-12);
        assert!(p.coeffs()[1].abs() < 1e-12 && p.coeffs()[2].abs() < 1e-12);
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        // (2e1 + e3)/3 is the idempotent spanning the real block of Γ(e,3).
        let u = el([2.0 / 3.0, 0.0, 1.0 / 3.0]);
        let sq = u.clone() * u.clone();
        for k in 0..3 {
            assert!((sq.coeffs()[k] - u.coeffs()[k]).abs() < 1e-15);
        }
        assert!(matches!(u.inverse(), Err(Error::NearZeroNorm { .. })));
        let zero = HnsElement::<f64>::zero(&GAMMA3);
        assert!(zero.inverse().is_err());
    }

    #[test]
    fn table_mismatch_is_an_error() {
        let a = HnsElement::<f64>::identity(&GAMMA3);
        let b = HnsElement::<f64>::identity(&RC);
        assert_eq!(a.try_mul(&b), Err(Error::TableMismatch));
        assert!(HnsElement::<f64>::new(&GAMMA3, vec![1.0]).is_err());
    }

    #[test]
    fn complex_scalars() {
        let x: HnsElement<Complex64> = HnsElement::new(
            &GAMMA3,
            vec![
                Complex64::new(1.0, 0.5),
                Complex64::new(-0.2, 0.1),
                Complex64::new(0.3, -0.4),
            ],
        )
        .unwrap();
        let p = x.clone() * x.inverse().unwrap();
        assert!((p.coeffs()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(p.coeffs()[1].norm() < 1e-12 && p.coeffs()[2].norm() < 1e-12);
    }
}
