//! Total parametric sensitivity of a filter realization over a frequency grid.
//!
//! For a parameter vector `α` the per-frequency sensitivity is
//! `RCS(ω) = |Σ αᵢ·Dᵢ(ω) / |H(ω)||`, where `Dᵢ` is either `|∂H/∂αᵢ|`
//! ([`SensitivityMeasure::ResponseModulus`], the default) or `∂|H|/∂αᵢ`
//! ([`SensitivityMeasure::MagnitudeGradient`]). All derivatives come from
//! forward-mode dual numbers pushed through the rational form of the filter.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::filter::{Branch, ExpandedForm, FilterModel, RealTransfer3, Synthesizer, POLE_TOL};

/// `|H|` (relative to the numerator scale) below which sensitivity is
/// undefined.
pub const MAGNITUDE_TOL: f64 = 1e-12;

/// Mapping from frequency to a point on the unit circle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZConvention {
    /// `z = sin ω + i·cos ω`
    #[default]
    SinCos,
    /// `z = cos ω + i·sin ω`
    Standard,
}

impl ZConvention {
    pub fn point(self, omega: f64) -> Complex64 {
        match self {
            ZConvention::SinCos => Complex64::new(omega.sin(), omega.cos()),
            ZConvention::Standard => Complex64::new(omega.cos(), omega.sin()),
        }
    }
}

impl FromStr for ZConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin-cos" => Ok(ZConvention::SinCos),
            "standard" => Ok(ZConvention::Standard),
            other => Err(Error::Parse(format!("unknown z convention `{other}`"))),
        }
    }
}

impl fmt::Display for ZConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZConvention::SinCos => "sin-cos",
            ZConvention::Standard => "standard",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyGrid {
    pub points: Vec<f64>,
    pub convention: ZConvention,
}

impl FrequencyGrid {
    /// `n` points `ω_k = 2πk/(n−1)`, both ends of `[0, 2π]` included.
    pub fn uniform(n: usize, convention: ZConvention) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "frequency grid needs at least 2 points, got {n}"
            )));
        }
        let step = 2.0 * PI / (n - 1) as f64;
        Ok(Self {
            points: (0..n).map(|k| k as f64 * step).collect(),
            convention,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn z(&self, k: usize) -> Complex64 {
        self.convention.point(self.points[k])
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self::uniform(33, ZConvention::SinCos).expect("33 points")
    }
}

/// What is differentiated in each relative-sensitivity term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SensitivityMeasure {
    /// `αᵢ·|∂H/∂αᵢ| / |H|`
    #[default]
    ResponseModulus,
    /// `αᵢ·(∂|H|/∂αᵢ) / |H|`
    MagnitudeGradient,
}

impl FromStr for SensitivityMeasure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "response-modulus" => Ok(SensitivityMeasure::ResponseModulus),
            "magnitude-gradient" => Ok(SensitivityMeasure::MagnitudeGradient),
            other => Err(Error::Parse(format!(
                "unknown sensitivity measure `{other}`"
            ))),
        }
    }
}

impl fmt::Display for SensitivityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SensitivityMeasure::ResponseModulus => "response-modulus",
            SensitivityMeasure::MagnitudeGradient => "magnitude-gradient",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SensitivityConfig {
    pub measure: SensitivityMeasure,
    /// Value charged for points where sensitivity is undefined. `None`
    /// drops them from the sum.
    pub penalty: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityPoint {
    pub omega: f64,
    pub rcs: Result<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityProfile {
    pub per_point: Vec<SensitivityPoint>,
    pub aggregate: f64,
}

impl SensitivityProfile {
    /// True when some grid point was excluded or penalized.
    pub fn has_failures(&self) -> bool {
        self.per_point.iter().any(|p| p.rcs.is_err())
    }

    pub fn failures(&self) -> impl Iterator<Item = &SensitivityPoint> {
        self.per_point.iter().filter(|p| p.rcs.is_err())
    }
}

/// Value and parameter derivatives of `H` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseGradient {
    pub value: Complex64,
    pub partials: Vec<Complex64>,
}

/// Per-parameter tangent forms of a filter, reusable across frequencies.
#[derive(Clone, Debug)]
pub struct SensitivityEngine {
    params: Vec<f64>,
    tangents: Vec<ExpandedForm<Dual<f64>>>,
}

impl SensitivityEngine {
    pub fn new<F: FilterModel>(filter: &F) -> Self {
        let params = filter.parameters();
        let tangents = (0..params.len())
            .map(|i| {
                let seeded: Vec<Dual<f64>> = params
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| {
                        if k == i {
                            Dual::variable(p)
                        } else {
                            Dual::constant(p)
                        }
                    })
                    .collect();
                filter.rational_form(&seeded)
            })
            .collect();
        Self { params, tangents }
    }

    pub fn parameters(&self) -> &[f64] {
        &self.params
    }

    pub fn form(&self) -> ExpandedForm<f64> {
        match self.tangents.first() {
            Some(t) => t.map(|d| d.value),
            None => ExpandedForm {
                numerator: [0.0; 4],
                denominator: [0.0; 3],
            },
        }
    }

    /// `H(z)` and `∂H/∂αᵢ` for every parameter.
    pub fn gradient(&self, omega: f64, z: Complex64) -> Result<ResponseGradient> {
        let w = Dual::constant(z.inv());
        let mut value = None;
        let mut partials = Vec::with_capacity(self.tangents.len());
        for t in &self.tangents {
            let h = t
                .map(|d| d.to_complex())
                .eval(w)
                .map_err(|_| Error::PoleAtFrequency { omega })?;
            value.get_or_insert(h.value);
            partials.push(h.deriv);
        }
        let value = match value {
            Some(v) => v,
            None => self.response(omega, z)?,
        };
        Ok(ResponseGradient { value, partials })
    }

    pub fn response(&self, omega: f64, z: Complex64) -> Result<Complex64> {
        let form = self.form().map(|&c| Complex64::new(c, 0.0));
        let w = z.inv();
        if form.denominator_at(w).norm() < POLE_TOL {
            return Err(Error::PoleAtFrequency { omega });
        }
        Ok(form.numerator_at(w) / form.denominator_at(w))
    }

    /// Signed relative-sensitivity terms `αᵢ·Dᵢ/|H|`; the RCS is the modulus
    /// of their sum.
    pub fn relative_terms(
        &self,
        omega: f64,
        z: Complex64,
        measure: SensitivityMeasure,
    ) -> Result<Vec<f64>> {
        let g = self.gradient(omega, z)?;
        self.check_magnitude(omega, z, g.value)?;
        let mag = g.value.norm();
        Ok(self
            .params
            .iter()
            .zip(&g.partials)
            .map(|(&alpha, &d)| {
                let di = match measure {
                    SensitivityMeasure::ResponseModulus => d.norm(),
                    SensitivityMeasure::MagnitudeGradient => Dual::new(g.value, d).modulus_deriv(),
                };
                alpha * di / mag
            })
            .collect())
    }

    pub fn rcs(&self, omega: f64, z: Complex64, measure: SensitivityMeasure) -> Result<f64> {
        let terms = self.relative_terms(omega, z, measure)?;
        Ok(terms.iter().sum::<f64>().abs())
    }

    /// `∂|H|/∂αᵢ` for every parameter.
    pub fn magnitude_gradient(&self, omega: f64, z: Complex64) -> Result<Vec<f64>> {
        let g = self.gradient(omega, z)?;
        self.check_magnitude(omega, z, g.value)?;
        Ok(g.partials
            .iter()
            .map(|&d| Dual::new(g.value, d).modulus_deriv())
            .collect())
    }

    /// The numerator is compared against its own coefficient scale so that
    /// exact transmission zeros are caught regardless of rounding in the
    /// synthesized coefficients.
    fn check_magnitude(&self, omega: f64, z: Complex64, h: Complex64) -> Result<()> {
        let form = self.form().map(|&c| Complex64::new(c, 0.0));
        let w = z.inv();
        let scale = form
            .numerator
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * w.norm() + c.norm())
            .max(1.0);
        let num = form.numerator_at(w).norm();
        let magnitude = h.norm();
        if magnitude < MAGNITUDE_TOL || num < MAGNITUDE_TOL * scale {
            return Err(Error::MagnitudeUnderflow { omega, magnitude });
        }
        Ok(())
    }
}

/// `|H(z(ω))|` via the rational form.
pub fn magnitude<F: FilterModel>(filter: &F, omega: f64, convention: ZConvention) -> Result<f64> {
    let form = filter
        .rational_form(&filter.parameters())
        .map(|&c| Complex64::new(c, 0.0));
    let w = convention.point(omega).inv();
    if form.denominator_at(w).norm() < POLE_TOL {
        return Err(Error::PoleAtFrequency { omega });
    }
    Ok((form.numerator_at(w) / form.denominator_at(w)).norm())
}

/// RCS of a single filter at one frequency.
pub fn rcs<F: FilterModel>(
    filter: &F,
    omega: f64,
    convention: ZConvention,
    measure: SensitivityMeasure,
) -> Result<f64> {
    SensitivityEngine::new(filter).rcs(omega, convention.point(omega), measure)
}

/// RCS at every grid point, aggregated in index order.
pub fn profile<F: FilterModel>(
    filter: &F,
    grid: &FrequencyGrid,
    config: &SensitivityConfig,
) -> SensitivityProfile {
    let engine = SensitivityEngine::new(filter);
    let per_point: Vec<SensitivityPoint> = (0..grid.len())
        .map(|k| SensitivityPoint {
            omega: grid.points[k],
            rcs: engine.rcs(grid.points[k], grid.z(k), config.measure),
        })
        .collect();
    let mut aggregate = 0.0;
    for p in &per_point {
        match (&p.rcs, config.penalty) {
            (Ok(v), _) => aggregate += v,
            (Err(_), Some(pen)) => aggregate += pen,
            (Err(_), None) => {}
        }
    }
    SensitivityProfile {
        per_point,
        aggregate,
    }
}

/// `S_RCS` as a function of the free parameters, with the denominator of the
/// target solved once.
#[derive(Clone, Debug)]
pub struct Objective {
    synth: Synthesizer,
    grid: FrequencyGrid,
    config: SensitivityConfig,
}

impl Objective {
    pub fn new(
        target: &RealTransfer3,
        branch: Branch,
        grid: FrequencyGrid,
        config: SensitivityConfig,
    ) -> Result<Self> {
        Ok(Self::from_synthesizer(
            Synthesizer::new(target, branch)?,
            grid,
            config,
        ))
    }

    pub fn from_synthesizer(
        synth: Synthesizer,
        grid: FrequencyGrid,
        config: SensitivityConfig,
    ) -> Self {
        Self {
            synth,
            grid,
            config,
        }
    }

    pub fn synthesizer(&self) -> &Synthesizer {
        &self.synth
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn config(&self) -> &SensitivityConfig {
        &self.config
    }

    pub fn profile(&self, a3: f64, b2: f64) -> Result<SensitivityProfile> {
        let f = self.synth.realize(a3, b2)?;
        Ok(profile(&f, &self.grid, &self.config))
    }

    pub fn value(&self, a3: f64, b2: f64) -> Result<f64> {
        self.profile(a3, b2).map(|p| p.aggregate)
    }

    /// Profile of the target filter itself (seven real coefficients).
    pub fn real_profile(&self) -> SensitivityProfile {
        profile(self.synth.target(), &self.grid, &self.config)
    }

    /// Hypercomplex over real RCS at each grid point.
    pub fn ratio_profile(&self, a3: f64, b2: f64) -> Result<Vec<RatioPoint>> {
        let hyper = self.profile(a3, b2)?;
        let real = self.real_profile();
        Ok(hyper
            .per_point
            .iter()
            .zip(&real.per_point)
            .map(|(h, r)| {
                let omega = h.omega;
                let ratio = match (&h.rcs, &r.rcs) {
                    (Err(e), _) => Err(e.clone()),
                    (Ok(_), Err(_)) => Err(Error::DivisionByZeroSensitivity { omega }),
                    (Ok(_), Ok(rv)) if *rv <= f64::MIN_POSITIVE => {
                        Err(Error::DivisionByZeroSensitivity { omega })
                    }
                    (Ok(hv), Ok(rv)) => Ok(hv / rv),
                };
                RatioPoint { omega, ratio }
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioPoint {
    pub omega: f64,
    pub ratio: Result<f64>,
}

/// `S_RCS` of the realization of `target` at `(a3, b2)`, negative branch.
pub fn s_rcs(
    target: &RealTransfer3,
    a3: f64,
    b2: f64,
    grid: &FrequencyGrid,
    config: &SensitivityConfig,
) -> Result<SensitivityProfile> {
    Objective::new(target, Branch::default(), grid.clone(), *config)?.profile(a3, b2)
}

pub fn ratio_profile(
    target: &RealTransfer3,
    a3: f64,
    b2: f64,
    grid: &FrequencyGrid,
    config: &SensitivityConfig,
) -> Result<Vec<RatioPoint>> {
    Objective::new(target, Branch::default(), grid.clone(), *config)?.ratio_profile(a3, b2)
}

/// `π/2 − ω`, wrapped into `[0, 2π)`: the frequency at which the standard
/// convention visits the point the sin-cos convention visits at `ω`.
pub fn convention_partner(omega: f64) -> f64 {
    (FRAC_PI_2 - omega).rem_euclid(2.0 * PI)
}
