use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Structure constants of a finite-dimensional commutative algebra with
/// identity. `gamma(i, j, k)` is the coefficient of `e_k` in `e_i·e_j`;
/// indices are zero-based and `e_0` is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraTable {
    name: String,
    dim: usize,
    gamma: Vec<f64>,
}

/// The non-canonical system Γ(e,3):
/// `e2² = −e1 + e3`, `e2·e3 = −2e2`, `e3² = 2e1 − e3`.
pub static GAMMA3: LazyLock<AlgebraTable> = LazyLock::new(|| {
    AlgebraTable::from_products(
        "Γ(e,3)",
        3,
        &[
            (1, 1, &[-1.0, 0.0, 1.0]),
            (1, 2, &[0.0, -2.0, 0.0]),
            (2, 2, &[2.0, 0.0, -1.0]),
        ],
    )
    .expect("built-in Γ(e,3) table is valid")
});

/// `R⊕C` in the identity-first basis `(E1 + E2, E2, E3)`; see
/// [`AlgebraTable::rc`].
pub static RC: LazyLock<AlgebraTable> = LazyLock::new(AlgebraTable::rc);

impl AlgebraTable {
    /// Builds a table from its raw constants and validates the identity and
    /// commutativity invariants.
    pub fn new(name: impl Into<String>, dim: usize, gamma: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidTable("dimension must be positive".into()));
        }
        if gamma.len() != dim * dim * dim {
            return Err(Error::InvalidTable(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                gamma.len()
            )));
        }
        let table = Self {
            name: name.into(),
            dim,
            gamma,
        };
        table.check_identity()?;
        if !table.is_commutative() {
            return Err(Error::InvalidTable("table is not commutative".into()));
        }
        Ok(table)
    }

    /// Builds a table with `e_0` as identity from the products of the
    /// remaining basis elements; each `(i, j, coeffs)` also sets `e_j·e_i`.
    pub fn from_products(
        name: impl Into<String>,
        dim: usize,
        products: &[(usize, usize, &[f64])],
    ) -> Result<Self> {
        let mut gamma = vec![0.0; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for j in 0..dim {
            gamma[idx(0, j, j)] = 1.0;
            gamma[idx(j, 0, j)] = 1.0;
        }
        for &(i, j, coeffs) in products {
            if i == 0 || j == 0 || i >= dim || j >= dim || coeffs.len() != dim {
                return Err(Error::InvalidTable(format!("bad product entry ({i}, {j})")));
            }
            for (k, &c) in coeffs.iter().enumerate() {
                gamma[idx(i, j, k)] = c;
                gamma[idx(j, i, k)] = c;
            }
        }
        Self::new(name, dim, gamma)
    }

    /// `R ⊕ C` re-expressed so that `e_0` is the identity.
    ///
    /// The printed table uses `E1` (the real idempotent), `E2` (the complex
    /// unit) and `E3` (the imaginary unit). Table contracts here require the
    /// identity to be the first basis vector, so the basis is
    /// `(E1 + E2, E2, E3)`; in it `e1 = E1 + E2`, `e2² = e2`, `e2·e3 = e3`,
    /// `e3² = −e2`. Coordinates convert with [`RC_FROM_PRINTED`] and
    /// [`RC_TO_PRINTED`].
    pub fn rc() -> Self {
        Self::from_products(
            "R⊕C",
            3,
            &[
                (1, 1, &[0.0, 1.0, 0.0]),
                (1, 2, &[0.0, 0.0, 1.0]),
                (2, 2, &[0.0, -1.0, 0.0]),
            ],
        )
        .expect("built-in R⊕C table is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of the product `e_i·e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[f64] {
        let start = (i * self.dim + j) * self.dim;
        &self.gamma[start..start + self.dim]
    }

    fn check_identity(&self) -> Result<()> {
        for j in 0..self.dim {
            for k in 0..self.dim {
                let expected = if j == k { 1.0 } else { 0.0 };
                if self.gamma(0, j, k) != expected || self.gamma(j, 0, k) != expected {
                    return Err(Error::InvalidTable(format!(
                        "e1 is not the identity (entry {j},{k})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.gamma(i, j, k) == self.gamma(j, i, k))))
    }

    /// Largest coefficient error of `(e_i·e_j)·e_k − e_i·(e_j·e_k)` over all
    /// basis triples.
    pub fn associativity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut left = 0.0;
                        let mut right = 0.0;
                        for p in 0..n {
                            left += self.gamma(i, j, p) * self.gamma(p, k, m);
                            right += self.gamma(j, k, p) * self.gamma(i, p, m);
                        }
                        worst = worst.max((left - right).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn is_associative(&self, tol: f64) -> bool {
        self.associativity_defect() <= tol
    }

    /// Number of nonzero structure constants in products of non-identity
    /// basis elements, counting each unordered pair `i ≤ j` once.
    pub fn nonzero_constants(&self) -> usize {
        let n = self.dim;
        (1..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| self.product(i, j).iter().filter(|&&c| c != 0.0).count())
            .sum()
    }

    /// Same as [`Self::nonzero_constants`] but over ordered pairs.
    pub fn nonzero_constants_ordered(&self) -> usize {
        let n = self.dim;
        (1..n)
            .flat_map(|i| (1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.product(i, j).iter().filter(|&&c| c != 0.0).count())
            .sum()
    }
}

/// Converts printed `R⊕C` coordinates `(x1, x2, x3)` in `E1, E2, E3` into
/// coordinates of the identity-first basis used by [`RC`].
pub const RC_FROM_PRINTED: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Inverse of [`RC_FROM_PRINTED`].
pub const RC_TO_PRINTED: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_are_commutative_and_associative() {
        for t in [&*GAMMA3, &*RC] {
            assert!(t.is_commutative(), "{}", t.name());
            assert!(t.associativity_defect() < 1e-12, "{}", t.name());
        }
    }

    #[test]
    fn gamma3_products_match_table() {
        let g = &*GAMMA3;
        assert_eq!(g.product(1, 1), &[-1.0, 0.0, 1.0]);
        assert_eq!(g.product(1, 2), &[0.0, -2.0, 0.0]);
        assert_eq!(g.product(2, 1), &[0.0, -2.0, 0.0]);
        assert_eq!(g.product(2, 2), &[2.0, 0.0, -1.0]);
        assert_eq!(g.nonzero_constants(), 5);
        assert_eq!(g.nonzero_constants_ordered(), 6);
    }

    #[test]
    fn rc_matches_printed_table_after_basis_change() {
        // Printed: E1² = E1, E2² = E2, E2E3 = E3, E3² = −E2, E1 orthogonal.
        // Identity-first basis: e1 = E1 + E2, e2 = E2, e3 = E3.
        let t = &*RC;
        let printed = |v: &[f64]| -> [f64; 3] {
            let mut out = [0.0; 3];
            for (r, row) in RC_TO_PRINTED.iter().enumerate() {
                out[r] = row.iter().zip(v).map(|(a, b)| a * b).sum();
            }
            out
        };
        assert_eq!(printed(t.product(1, 1)), [0.0, 1.0, 0.0]);
        assert_eq!(printed(t.product(1, 2)), [0.0, 0.0, 1.0]);
        assert_eq!(printed(t.product(2, 2)), [0.0, -1.0, 0.0]);
        // E1 = e1 − e2 is idempotent and annihilates E2 = e2 and E3 = e3.
        let big_e1 = [1.0, -1.0, 0.0];
        let sq = crate::algebra::HnsElement::new(t, big_e1.to_vec()).unwrap();
        assert_eq!((sq.clone() * sq.clone()).coeffs(), &big_e1);
        let e2 = crate::algebra::HnsElement::basis(t, 1);
        assert_eq!((sq * e2).coeffs(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_tables_without_identity() {
        let mut gamma = GAMMA3.gamma.clone();
        gamma[0] = 2.0;
        assert!(matches!(
            AlgebraTable::new("bad", 3, gamma),
            Err(Error::InvalidTable(_))
        ));
        assert!(AlgebraTable::new("short", 3, vec![0.0; 4]).is_err());
    }

    #[test]
    fn rejects_noncommutative_tables() {
        let mut gamma = GAMMA3.gamma.clone();
        // e2·e3 ≠ e3·e2
        gamma[(3 + 2) * 3 + 1] = 5.0;
        assert!(AlgebraTable::new("nc", 3, gamma).is_err());
    }
}
