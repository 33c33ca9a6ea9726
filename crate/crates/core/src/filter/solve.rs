//! Conversion of a real third-order filter into the first-order Γ(e,3)
//! realization.
//!
//! The denominator system `T(C) = ψ1, P(C) = ψ2, Q(C) = ψ3` is nonlinear and
//! is solved by damped Newton iteration from a lattice of starting points.
//! `c2` enters only squared, so real solutions come in `±c2` pairs; the
//! [`Branch`] argument picks one. With `C` fixed the numerator coefficients
//! are linear in `A` and `B`; `a1 = φ0` directly, `(a3, b2)` are free, and the
//! remaining `(a2, b1, b3)` solve a 3×3 linear system.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::hyper::{denominator_of, expand_params, HyperFilter1};
use super::transfer::RealTransfer3;
use crate::algebra::{HnsElement, GAMMA3};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};

/// Sign of `c2` in the denominator solution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branch {
    #[default]
    Negative,
    Positive,
}

impl Branch {
    fn accepts(self, c2: f64) -> bool {
        match self {
            Branch::Negative => c2 <= 0.0,
            Branch::Positive => c2 >= 0.0,
        }
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negative" | "neg" | "-" => Ok(Branch::Negative),
            "positive" | "pos" | "+" => Ok(Branch::Positive),
            other => Err(Error::Parse(format!("unknown branch `{other}`"))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Negative => "negative",
            Branch::Positive => "positive",
        })
    }
}

/// Multistart Newton settings for the denominator system.
#[derive(Clone, Debug)]
pub struct NewtonConfig {
    pub lattice_min: f64,
    pub lattice_max: f64,
    pub lattice_step: f64,
    pub max_iter: usize,
    /// Convergence threshold on the largest residual, relative to
    /// `max(1, max|ψ|)`.
    pub tol: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            lattice_min: -2.0,
            lattice_max: 2.0,
            lattice_step: 0.25,
            max_iter: 100,
            tol: 1e-13,
        }
    }
}

impl NewtonConfig {
    fn lattice(&self) -> Vec<f64> {
        let n = ((self.lattice_max - self.lattice_min) / self.lattice_step).round() as usize;
        (0..=n)
            .map(|k| self.lattice_min + k as f64 * self.lattice_step)
            .collect()
    }
}

/// Outcome of one Newton run.
#[derive(Clone, Copy, Debug)]
struct NewtonRun {
    c: Vec3,
    residual: f64,
    converged: bool,
}

fn residual_vec(c: &Vec3, target: &Vec3) -> Vec3 {
    let d = denominator_of(c);
    std::array::from_fn(|k| d[k] - target[k])
}

fn jacobian(c: &Vec3) -> Mat3 {
    let mut jac = [[0.0; 3]; 3];
    for col in 0..3 {
        let seeded: [Dual<f64>; 3] = std::array::from_fn(|k| {
            if k == col {
                Dual::variable(c[k])
            } else {
                Dual::constant(c[k])
            }
        });
        let d = denominator_of(&seeded);
        for row in 0..3 {
            jac[row][col] = d[row].deriv;
        }
    }
    jac
}

fn newton(start: Vec3, target: &Vec3, cfg: &NewtonConfig) -> NewtonRun {
    let tol = cfg.tol * linalg::max_abs(target).max(1.0);
    let mut c = start;
    let mut f = residual_vec(&c, target);
    let mut res = linalg::max_abs(&f);
    for _ in 0..cfg.max_iter {
        if res < tol {
            break;
        }
        let Some(step) = linalg::solve(&jacobian(&c), &f) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec3 = std::array::from_fn(|k| c[k] - lambda * step[k]);
            let ft = residual_vec(&trial, target);
            let rt = linalg::max_abs(&ft);
            if rt < res {
                c = trial;
                f = ft;
                res = rt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    NewtonRun {
        c,
        residual: res,
        converged: res < tol && c.iter().all(|x| x.is_finite()),
    }
}

/// Finds `C` with `(T, P, Q)(C) = (ψ1, ψ2, ψ3)` on the requested branch.
pub fn solve_denominator(
    target: &RealTransfer3,
    branch: Branch,
) -> Result<HnsElement<'static, f64>> {
    solve_denominator_with(target, branch, &NewtonConfig::default())
}

pub fn solve_denominator_with(
    target: &RealTransfer3,
    branch: Branch,
    cfg: &NewtonConfig,
) -> Result<HnsElement<'static, f64>> {
    let psi = target.den;
    let axis = cfg.lattice();
    let mut starts: Vec<Vec3> = Vec::with_capacity(axis.len().pow(3));
    for &x in &axis {
        for &y in &axis {
            for &z in &axis {
                starts.push([x, y, z]);
            }
        }
    }
    let runs: Vec<NewtonRun> = starts.par_iter().map(|&s| newton(s, &psi, cfg)).collect();

    // Best residual first, then lowest lattice index.
    let best = runs
        .iter()
        .filter(|r| r.converged && branch.accepts(r.c[1]))
        .min_by(|a, b| a.residual.total_cmp(&b.residual));
    match best {
        Some(run) => Ok(HnsElement::from_reals(&GAMMA3, &run.c).expect("dimension 3")),
        None => {
            let best_residual = runs
                .iter()
                .map(|r| r.residual)
                .filter(|r| r.is_finite())
                .fold(f64::INFINITY, f64::min);
            Err(Error::NoRealSolution { best_residual })
        }
    }
}

/// Numerator coefficients `(K, M, L)` for the given parameter vector.
fn tail_numerator(p: &[f64; 9]) -> Vec3 {
    let e = expand_params(p);
    [e.numerator[1], e.numerator[2], e.numerator[3]]
}

/// Linear system for `(a2, b1, b3)` given `C` and the free parameters.
/// Returns the matrix and the right-hand side.
pub fn numerator_system(target: &RealTransfer3, c: &[f64], a3: f64, b2: f64) -> (Mat3, Vec3) {
    let base_params = [target.num[0], 0.0, a3, 0.0, b2, 0.0, c[0], c[1], c[2]];
    let base = tail_numerator(&base_params);
    const UNKNOWN_SLOTS: [usize; 3] = [1, 3, 5];
    let mut m = [[0.0; 3]; 3];
    for (col, &slot) in UNKNOWN_SLOTS.iter().enumerate() {
        let mut p = base_params;
        p[slot] = 1.0;
        let v = tail_numerator(&p);
        for row in 0..3 {
            m[row][col] = v[row] - base[row];
        }
    }
    let rhs = std::array::from_fn(|k| target.num[k + 1] - base[k]);
    (m, rhs)
}

/// Condition estimates above this are reported as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Solves for `A` and `B` with `a1 = φ0`, `a3` and `b2` fixed.
pub fn solve_numerator(
    target: &RealTransfer3,
    c: &HnsElement<'_, f64>,
    a3: f64,
    b2: f64,
) -> Result<(HnsElement<'static, f64>, HnsElement<'static, f64>)> {
    let (m, rhs) = numerator_system(target, c.coeffs(), a3, b2);
    let condition = linalg::condition(&m);
    let x = if condition < MAX_CONDITION {
        linalg::solve(&m, &rhs).ok_or(Error::SingularSystem { condition })?
    } else {
        // Rank-deficient systems (e.g. C = 0, where a2 and b3 drop out) are
        // accepted only when consistent; the unused unknowns are set to zero.
        let (x, _, residual) = linalg::solve_rank_revealing(&m, &rhs, 1e-12);
        if residual > 1e-12 * linalg::max_abs(&rhs).max(1.0) {
            return Err(Error::SingularSystem { condition });
        }
        x
    };
    let a = HnsElement::from_reals(&GAMMA3, &[target.num[0], x[0], a3]).expect("dimension 3");
    let b = HnsElement::from_reals(&GAMMA3, &[x[1], b2, x[2]]).expect("dimension 3");
    Ok((a, b))
}

/// A target filter with its denominator system already solved, ready to be
/// realized for any choice of the free parameters.
#[derive(Clone, Debug)]
pub struct Synthesizer {
    target: RealTransfer3,
    c: HnsElement<'static, f64>,
    branch: Branch,
}

impl Synthesizer {
    pub fn new(target: &RealTransfer3, branch: Branch) -> Result<Self> {
        Ok(Self {
            target: target.clone(),
            c: solve_denominator(target, branch)?,
            branch,
        })
    }

    pub fn target(&self) -> &RealTransfer3 {
        &self.target
    }

    pub fn c(&self) -> &HnsElement<'static, f64> {
        &self.c
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn realize(&self, a3: f64, b2: f64) -> Result<HyperFilter1> {
        let (a, b) = solve_numerator(&self.target, &self.c, a3, b2)?;
        let arr = |e: &HnsElement<'_, f64>| -> [f64; 3] { e.coeffs().try_into().unwrap() };
        Ok(HyperFilter1::new(arr(&a), arr(&b), arr(&self.c)))
    }
}

pub fn convert(target: &RealTransfer3, a3: f64, b2: f64, branch: Branch) -> Result<HyperFilter1> {
    Synthesizer::new(target, branch)?.realize(a3, b2)
}

/// Largest coefficient deviation between `expand(f)` and `target`.
pub fn round_trip_residual(f: &HyperFilter1, target: &RealTransfer3) -> f64 {
    f.expand().max_deviation(&target.form())
}
