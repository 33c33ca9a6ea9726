//! Isomorphisms between three-dimensional commutative algebras.
//!
//! A three-dimensional commutative associative algebra with a nontrivial
//! idempotent `u` splits as `uA ⊕ (e1 − u)A`. Taking `u` with a
//! one-dimensional block, the complement is a two-dimensional algebra with
//! identity `v = e1 − u` and a generator `j` normalized to `j² ∈ {−v, 0, v}`.
//! Two such algebras are isomorphic exactly when the normalized squares
//! agree, and the map `u ↦ u'`, `v ↦ v'`, `j ↦ j'` is an isomorphism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::HnsElement;
use super::table::AlgebraTable;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};

/// Newton search settings for idempotents (`u² = u`).
#[derive(Clone, Debug)]
pub struct IdempotentSearch {
    pub starts: usize,
    pub max_iter: usize,
    pub tol: f64,
    /// Starting points are drawn uniformly from `[−radius, radius]³`.
    pub radius: f64,
    pub seed: u64,
}

impl Default for IdempotentSearch {
    fn default() -> Self {
        Self {
            starts: 64,
            max_iter: 100,
            tol: 1e-12,
            radius: 2.0,
            seed: 0x5eed_1de0,
        }
    }
}

/// Type of the two-dimensional block `(e1 − u)A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `j² = −v`: the block is the complex numbers.
    Complex,
    /// `j² = v`: the block is `R ⊕ R`.
    Split,
    /// `j² = 0`: the block is the dual numbers.
    Nilpotent,
}

#[derive(Clone, Debug)]
pub struct Isomorphism {
    /// Maps source coordinates to destination coordinates.
    pub matrix: Mat3,
    /// Idempotent of the source spanning its one-dimensional block.
    pub src_idempotent: Vec3,
    /// Image of `src_idempotent`.
    pub dst_idempotent: Vec3,
    pub block: BlockKind,
    /// Largest coefficient error of `M(e_i·e_j) − M(e_i)·M(e_j)`.
    pub max_defect: f64,
}

impl Isomorphism {
    pub fn apply(&self, x: &Vec3) -> Vec3 {
        linalg::mat_vec(&self.matrix, x)
    }
}

pub fn find_isomorphism(src: &AlgebraTable, dst: &AlgebraTable) -> Result<Isomorphism> {
    find_isomorphism_with(src, dst, &IdempotentSearch::default())
}

pub fn find_isomorphism_with(
    src: &AlgebraTable,
    dst: &AlgebraTable,
    search: &IdempotentSearch,
) -> Result<Isomorphism> {
    for t in [src, dst] {
        if t.dim() != 3 {
            return Err(Error::NoIsomorphismFound(format!(
                "{} has dimension {}, only 3 is supported",
                t.name(),
                t.dim()
            )));
        }
        if !t.is_commutative() || !t.is_associative(1e-12) {
            return Err(Error::NoIsomorphismFound(format!(
                "{} is not commutative and associative",
                t.name()
            )));
        }
    }
    let src_split = split(src, search)?;
    let dst_split = split(dst, search)?;
    if src_split.kind != dst_split.kind {
        return Err(Error::NoIsomorphismFound(format!(
            "complement blocks differ ({:?} vs {:?})",
            src_split.kind, dst_split.kind
        )));
    }
    let s_inv = linalg::inverse(&src_split.basis)
        .ok_or_else(|| Error::NoIsomorphismFound("adapted source basis is singular".into()))?;
    let matrix = linalg::mat_mul(&dst_split.basis, &s_inv);
    if linalg::det(&matrix).abs() < 1e-12 {
        return Err(Error::NoIsomorphismFound("map is not invertible".into()));
    }
    let max_defect = homomorphism_defect(src, dst, &matrix);
    let scale = linalg::norm_inf(&matrix).max(1.0);
    if max_defect > 1e-9 * scale * scale {
        return Err(Error::NoIsomorphismFound(format!(
            "homomorphism check failed (defect {max_defect:e})"
        )));
    }
    Ok(Isomorphism {
        matrix,
        src_idempotent: src_split.idempotent,
        dst_idempotent: dst_split.idempotent,
        block: src_split.kind,
        max_defect,
    })
}

/// Largest coefficient error of `M(e_i·e_j) − M(e_i)·M(e_j)` over all basis
/// pairs.
pub fn homomorphism_defect(src: &AlgebraTable, dst: &AlgebraTable, m: &Mat3) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let prod: Vec3 = src.product(i, j).try_into().unwrap();
            let lhs = linalg::mat_vec(m, &prod);
            let mi = column(m, i);
            let mj = column(m, j);
            let rhs = mul3(dst, &mi, &mj);
            for k in 0..3 {
                worst = worst.max((lhs[k] - rhs[k]).abs());
            }
        }
    }
    worst
}

/// Distinct nontrivial idempotents reached by Newton's method on
/// `u² − u = 0`, in order of first discovery.
pub fn find_idempotents(table: &AlgebraTable, search: &IdempotentSearch) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut found: Vec<Vec3> = Vec::new();
    for _ in 0..search.starts {
        let start: Vec3 = std::array::from_fn(|_| rng.gen_range(-search.radius..=search.radius));
        let Some(u) = newton_idempotent(table, start, search) else {
            continue;
        };
        let trivial =
            linalg::max_abs(&u) < 1e-8 || linalg::max_abs(&sub(&u, &[1.0, 0.0, 0.0])) < 1e-8;
        if trivial {
            continue;
        }
        if !found.iter().any(|f| linalg::max_abs(&sub(f, &u)) < 1e-8) {
            found.push(u);
        }
    }
    found
}

fn newton_idempotent(table: &AlgebraTable, mut u: Vec3, search: &IdempotentSearch) -> Option<Vec3> {
    for _ in 0..search.max_iter {
        let f = sub(&mul3(table, &u, &u), &u);
        if linalg::max_abs(&f) < search.tol {
            return Some(u);
        }
        let l = rep3(table, &u);
        let mut jac = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                jac[r][c] = 2.0 * l[r][c] - if r == c { 1.0 } else { 0.0 };
            }
        }
        let step = linalg::solve(&jac, &f)?;
        u = sub(&u, &step);
        if linalg::max_abs(&u) > 1e6 {
            return None;
        }
    }
    let f = sub(&mul3(table, &u, &u), &u);
    (linalg::max_abs(&f) < search.tol).then_some(u)
}

struct Split {
    idempotent: Vec3,
    kind: BlockKind,
    /// Columns `u`, `v = e1 − u`, `j` in table coordinates.
    basis: Mat3,
}

fn split(table: &AlgebraTable, search: &IdempotentSearch) -> Result<Split> {
    let candidates = find_idempotents(table, search);
    let one: Vec3 = [1.0, 0.0, 0.0];
    let rank_one = candidates.iter().find_map(|u| {
        // For an idempotent, trace(L_u) is the dimension of its block.
        let tr = trace(&rep3(table, u));
        if (tr - 1.0).abs() < 1e-8 {
            Some(*u)
        } else if (tr - 2.0).abs() < 1e-8 {
            Some(sub(&one, u))
        } else {
            None
        }
    });
    let u = rank_one.ok_or_else(|| {
        Error::NoIsomorphismFound(format!(
            "no nontrivial idempotent found in {} after {} starts",
            table.name(),
            search.starts
        ))
    })?;
    let v = sub(&one, &u);

    // Generator of the complement: the projection of a basis vector that is
    // furthest from being a multiple of v.
    let x = (1..3)
        .map(|k| {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            mul3(table, &v, &e)
        })
        .max_by(|a, b| off_axis(a, &v).total_cmp(&off_axis(b, &v)))
        .unwrap();
    if off_axis(&x, &v) < 1e-9 {
        return Err(Error::NoIsomorphismFound(format!(
            "complement block of {} is degenerate",
            table.name()
        )));
    }

    // x² = αv + βx, least squares over the three coordinates.
    let x2 = mul3(table, &x, &x);
    let (vv, vx, xx) = (dot(&v, &v), dot(&v, &x), dot(&x, &x));
    let (rv, rx) = (dot(&x2, &v), dot(&x2, &x));
    let det = vv * xx - vx * vx;
    let alpha = (rv * xx - rx * vx) / det;
    let beta = (vv * rx - vx * rv) / det;
    let resid: Vec3 = std::array::from_fn(|k| x2[k] - alpha * v[k] - beta * x[k]);
    if linalg::max_abs(&resid) > 1e-9 * (1.0 + linalg::max_abs(&x2)) {
        return Err(Error::NoIsomorphismFound(format!(
            "complement block of {} is not closed under multiplication",
            table.name()
        )));
    }

    let y: Vec3 = std::array::from_fn(|k| x[k] - 0.5 * beta * v[k]);
    let disc = alpha + 0.25 * beta * beta;
    let (kind, j) = if disc.abs() <= 1e-10 * xx {
        let n = dot(&y, &y).sqrt();
        (BlockKind::Nilpotent, y.map(|c| c / n))
    } else {
        let s = disc.abs().sqrt();
        let kind = if disc < 0.0 {
            BlockKind::Complex
        } else {
            BlockKind::Split
        };
        (kind, y.map(|c| c / s))
    };

    let mut basis = [[0.0; 3]; 3];
    for r in 0..3 {
        basis[r] = [u[r], v[r], j[r]];
    }
    Ok(Split {
        idempotent: u,
        kind,
        basis,
    })
}

fn mul3(table: &AlgebraTable, x: &Vec3, y: &Vec3) -> Vec3 {
    let a = HnsElement::new(table, x.to_vec()).expect("dimension 3");
    let b = HnsElement::new(table, y.to_vec()).expect("dimension 3");
    a.try_mul(&b)
        .expect("same table")
        .coeffs()
        .try_into()
        .unwrap()
}

fn rep3(table: &AlgebraTable, x: &Vec3) -> Mat3 {
    let l = HnsElement::new(table, x.to_vec())
        .expect("dimension 3")
        .regular_rep();
    std::array::from_fn(|r| std::array::from_fn(|c| *l.get(r, c)))
}

fn trace(m: &Mat3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

fn column(m: &Mat3, c: usize) -> Vec3 {
    [m[0][c], m[1][c], m[2][c]]
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    std::array::from_fn(|k| a[k] - b[k])
}

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Norm of the component of `x` orthogonal to `v`.
fn off_axis(x: &Vec3, v: &Vec3) -> f64 {
    let t = dot(x, v) / dot(v, v);
    let r: Vec3 = std::array::from_fn(|k| x[k] - t * v[k]);
    dot(&r, &r).sqrt()
}
