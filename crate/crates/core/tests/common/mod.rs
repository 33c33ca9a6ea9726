#![allow(dead_code)]

use std::sync::LazyLock;

use hyperfilter::filter::{Branch, HyperFilter1, RealTransfer3, Synthesizer};
use hyperfilter::sensitivity::{FrequencyGrid, Objective, SensitivityConfig, SensitivityEngine};
use num_complex::Complex64;

pub const REFERENCE_C: [f64; 3] = [0.1403252267, -0.3718209092, 0.0009238933689];
pub const REFERENCE_OPT: (f64, f64) = (-0.2316615, -1.2783899677);

pub static SYNTH: LazyLock<Synthesizer> =
    LazyLock::new(|| Synthesizer::new(&RealTransfer3::reference(), Branch::Negative).unwrap());

pub static OBJECTIVE: LazyLock<Objective> = LazyLock::new(|| {
    Objective::from_synthesizer(
        SYNTH.clone(),
        FrequencyGrid::default(),
        SensitivityConfig::default(),
    )
});

/// `|d − fd| / max(|d|, |fd|, 1e-9)`
pub fn rel_err(d: f64, fd: f64) -> f64 {
    (d - fd).abs() / d.abs().max(fd.abs()).max(1e-9)
}

pub fn rel_err_c(d: Complex64, fd: Complex64) -> f64 {
    (d - fd).norm() / d.norm().max(fd.norm()).max(1e-9)
}

/// Central difference with step `1e-6·max(1,|α|)`, one Richardson step.
pub fn central_difference(alpha: f64, eval: impl Fn(f64) -> Complex64) -> (f64, Complex64) {
    let h = 1e-6 * alpha.abs().max(1.0);
    let diff = |s: f64| {
        let (p, m) = (eval(s), eval(-s));
        ((p.norm() - m.norm()) / (2.0 * s), (p - m) / (2.0 * s))
    };
    let (m1, c1) = diff(h);
    let (m2, c2) = diff(h / 2.0);
    ((4.0 * m2 - m1) / 3.0, (c2 * 4.0 - c1) / 3.0)
}

/// Largest relative errors of the dual-number `∂|H|/∂α` and `∂H/∂α` against
/// finite differences of an independent evaluation path, plus the number of
/// (point, parameter) pairs checked.
pub struct DerivativeCheck {
    pub magnitude: f64,
    pub complex: f64,
    pub checked: usize,
}

fn check_engine(
    engine: &SensitivityEngine,
    params: &[f64],
    grid: &FrequencyGrid,
    eval: impl Fn(&[f64], Complex64) -> Complex64,
) -> DerivativeCheck {
    let mut out = DerivativeCheck {
        magnitude: 0.0,
        complex: 0.0,
        checked: 0,
    };
    for k in 0..grid.len() {
        let (omega, z) = (grid.points[k], grid.z(k));
        let Ok(mag) = engine.magnitude_gradient(omega, z) else {
            continue;
        };
        let g = engine.gradient(omega, z).unwrap();
        for i in 0..params.len() {
            let (fd_mag, fd_c) = central_difference(params[i], |d| {
                let mut q = params.to_vec();
                q[i] += d;
                eval(&q, z)
            });
            out.magnitude = out.magnitude.max(rel_err(mag[i], fd_mag));
            out.complex = out.complex.max(rel_err_c(g.partials[i], fd_c));
            out.checked += 1;
        }
    }
    out
}

pub fn check_hyper(f: &HyperFilter1, grid: &FrequencyGrid) -> DerivativeCheck {
    check_engine(
        &SensitivityEngine::new(f),
        &f.parameter_array(),
        grid,
        |q, z| {
            HyperFilter1::from_parameters(q.try_into().unwrap())
                .evaluate_direct(z)
                .unwrap()
        },
    )
}

pub fn check_real(f: &RealTransfer3, grid: &FrequencyGrid) -> DerivativeCheck {
    let params: Vec<f64> = f.num.iter().chain(&f.den).copied().collect();
    check_engine(&SensitivityEngine::new(f), &params, grid, |q, z| {
        // Direct evaluation in z rather than w = 1/z.
        let num = q[0] * z * z * z + q[1] * z * z + q[2] * z + q[3];
        let den = z * z * z + q[4] * z * z + q[5] * z + q[6];
        num / den
    })
}

/// Count of grid points where `pred` holds for a successfully computed value.
pub fn count_where<T>(values: &[hyperfilter::Result<T>], pred: impl Fn(&T) -> bool) -> usize {
    values
        .iter()
        .filter(|v| v.as_ref().is_ok_and(&pred))
        .count()
}
