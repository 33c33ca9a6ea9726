//! Minimization of `S_RCS` over the free parameters `(a3, b2)`.
//!
//! A coarse lattice scan locates a basin, a finer scan around the best
//! lattice point narrows it, and a Nelder–Mead simplex polishes the result.
//! Points where the realization cannot be built score `+∞`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sensitivity::Objective;

pub type Point = (f64, f64);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBox {
    pub a3: (f64, f64),
    pub b2: (f64, f64),
    /// Lattice points per axis (a collapsed axis has a single point).
    pub resolution: usize,
}

impl SearchBox {
    pub fn new(a3: (f64, f64), b2: (f64, f64), resolution: usize) -> Result<Self> {
        for (name, (lo, hi)) in [("a3", a3), ("b2", b2)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidArgument(format!(
                    "{name} interval [{lo}, {hi}] is empty or not finite"
                )));
            }
        }
        if resolution < 2 {
            return Err(Error::InvalidArgument(format!(
                "resolution must be at least 2, got {resolution}"
            )));
        }
        Ok(Self { a3, b2, resolution })
    }

    /// `[−10, 10]²` at 41 points per axis.
    pub fn wide() -> Self {
        Self {
            a3: (-10.0, 10.0),
            b2: (-10.0, 10.0),
            resolution: 41,
        }
    }

    /// `a3 ∈ [−0.25, 0.05]`, `b2 ∈ [−1.4, −1.25]` at 31 points per axis.
    pub fn reference_narrow() -> Self {
        Self {
            a3: (-0.25, 0.05),
            b2: (-1.4, -1.25),
            resolution: 31,
        }
    }

    /// Parses `"a3lo,a3hi,b2lo,b2hi"`.
    pub fn parse(bounds: &str, resolution: usize) -> Result<Self> {
        let v: Vec<f64> = bounds
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("box bound `{}`: {e}", s.trim())))
            })
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::Parse(format!(
                "box needs 4 comma-separated values, got {}",
                v.len()
            )));
        }
        Self::new((v[0], v[1]), (v[2], v[3]), resolution)
    }

    fn axis((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
        if lo == hi {
            return vec![lo];
        }
        let step = (hi - lo) / (n - 1) as f64;
        (0..n)
            .map(|k| if k == n - 1 { hi } else { lo + k as f64 * step })
            .collect()
    }

    pub fn a3_axis(&self) -> Vec<f64> {
        Self::axis(self.a3, self.resolution)
    }

    pub fn b2_axis(&self) -> Vec<f64> {
        Self::axis(self.b2, self.resolution)
    }

    /// Row-major lattice, `a3` in the outer loop.
    pub fn lattice(&self) -> Vec<Point> {
        let b2 = self.b2_axis();
        self.a3_axis()
            .into_iter()
            .flat_map(|a| b2.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn steps(&self) -> Point {
        let n = (self.resolution - 1) as f64;
        ((self.a3.1 - self.a3.0) / n, (self.b2.1 - self.b2.0) / n)
    }

    /// Box of `half_width` lattice steps on each side of `center`, clipped
    /// to `self`.
    pub fn shrink_around(&self, center: Point, half_width: f64, resolution: usize) -> Result<Self> {
        let (da, db) = self.steps();
        let clip = |c: f64, d: f64, (lo, hi): (f64, f64)| {
            ((c - half_width * d).max(lo), (c + half_width * d).min(hi))
        };
        Self::new(
            clip(center.0, da, self.a3),
            clip(center.1, db, self.b2),
            resolution,
        )
    }
}

impl fmt::Display for SearchBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a3 ∈ [{}, {}], b2 ∈ [{}, {}], {} per axis",
            self.a3.0, self.a3.1, self.b2.0, self.b2.1, self.resolution
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Wide,
    Narrow,
    Refine,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Wide => "wide",
            Stage::Narrow => "narrow",
            Stage::Refine => "refine",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StageState {
    Lattice(SearchBox),
    Simplex([Point; 3]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub stage: Stage,
    pub state: StageState,
    pub best: Point,
    pub best_value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    pub a3: f64,
    pub b2: f64,
    /// `+∞` where the realization failed.
    pub s_rcs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StageSurface {
    pub stage: Stage,
    pub samples: Vec<SurfaceSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimResult {
    pub best: Point,
    pub value: f64,
    pub trace: Vec<TraceEntry>,
    pub surfaces: Vec<StageSurface>,
}

fn score(obj: &Objective, p: Point) -> f64 {
    match obj.value(p.0, p.1) {
        Ok(v) if v.is_finite() => v,
        _ => f64::INFINITY,
    }
}

/// Scans the box lattice; the first lattice point attaining the minimum wins.
pub fn grid_search(obj: &Objective, bx: &SearchBox) -> Result<OptimResult> {
    grid_search_stage(obj, bx, Stage::Wide)
}

fn grid_search_stage(obj: &Objective, bx: &SearchBox, stage: Stage) -> Result<OptimResult> {
    let lattice = bx.lattice();
    let values: Vec<f64> = lattice.par_iter().map(|&p| score(obj, p)).collect();
    let mut best: Option<usize> = None;
    for (k, v) in values.iter().enumerate() {
        if v.is_finite() && best.is_none_or(|b| *v < values[b]) {
            best = Some(k);
        }
    }
    let best = best.ok_or(Error::AllPointsInfeasible)?;
    let samples = lattice
        .iter()
        .zip(&values)
        .map(|(&(a3, b2), &s_rcs)| SurfaceSample { a3, b2, s_rcs })
        .collect();
    Ok(OptimResult {
        best: lattice[best],
        value: values[best],
        trace: vec![TraceEntry {
            stage,
            state: StageState::Lattice(*bx),
            best: lattice[best],
            best_value: values[best],
        }],
        surfaces: vec![StageSurface { stage, samples }],
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadConfig {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    pub initial_edge: f64,
    pub diameter_tol: f64,
    pub spread_tol: f64,
    pub max_iter: usize,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_edge: 0.02,
            diameter_tol: 1e-8,
            spread_tol: 1e-10,
            max_iter: 500,
        }
    }
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
}

fn dist(a: Point, b: Point) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Nelder–Mead from `start`; the best value never increases.
pub fn refine(obj: &Objective, start: Point) -> Result<OptimResult> {
    refine_with(obj, start, &NelderMeadConfig::default())
}

pub fn refine_with(obj: &Objective, start: Point, cfg: &NelderMeadConfig) -> Result<OptimResult> {
    let f0 = obj.value(start.0, start.1)?;
    let e = cfg.initial_edge;
    let mut simplex = [
        (start, f0),
        ((start.0 + e, start.1), 0.0),
        ((start.0, start.1 + e), 0.0),
    ];
    for v in simplex.iter_mut().skip(1) {
        v.1 = score(obj, v.0);
    }
    let mut trace = Vec::new();
    let mut converged = false;
    for _ in 0..cfg.max_iter {
        // Stable sort: equal values keep the lower vertex index first.
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(TraceEntry {
            stage: Stage::Refine,
            state: StageState::Simplex(simplex.map(|v| v.0)),
            best: simplex[0].0,
            best_value: simplex[0].1,
        });
        let diameter = simplex[1..]
            .iter()
            .map(|v| dist(v.0, simplex[0].0))
            .fold(0.0, f64::max);
        let spread = simplex[2].1 - simplex[0].1;
        if diameter < cfg.diameter_tol || spread < cfg.spread_tol {
            converged = true;
            break;
        }
        let [best, mid, worst] = simplex;
        let centroid = lerp(best.0, mid.0, 0.5);
        let xr = lerp(centroid, worst.0, -cfg.reflection);
        let fr = score(obj, xr);
        if fr < best.1 {
            let xe = lerp(centroid, worst.0, -cfg.expansion);
            let fe = score(obj, xe);
            simplex[2] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < mid.1 {
            simplex[2] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = lerp(centroid, xr, cfg.contraction);
                (xc, score(obj, xc))
            } else {
                let xc = lerp(centroid, worst.0, cfg.contraction);
                (xc, score(obj, xc))
            };
            if fc < fr.min(worst.1) {
                simplex[2] = (xc, fc);
            } else {
                for v in simplex.iter_mut().skip(1) {
                    v.0 = lerp(best.0, v.0, cfg.shrink);
                    v.1 = score(obj, v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    if !converged && simplex.iter().any(|v| v.1.is_infinite()) {
        return Err(Error::StalledAtInfeasible);
    }
    let best = simplex[0].0;
    let value = obj.value(best.0, best.1)?;
    trace.push(TraceEntry {
        stage: Stage::Refine,
        state: StageState::Simplex(simplex.map(|v| v.0)),
        best,
        best_value: value,
    });
    Ok(OptimResult {
        best,
        value,
        trace,
        surfaces: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StagedConfig {
    pub wide: SearchBox,
    pub narrow_resolution: usize,
    /// Half-width of the narrow box in wide-lattice steps.
    pub narrow_half_width: f64,
    pub simplex: NelderMeadConfig,
}

impl Default for StagedConfig {
    fn default() -> Self {
        Self {
            wide: SearchBox::wide(),
            narrow_resolution: 31,
            narrow_half_width: 1.5,
            simplex: NelderMeadConfig::default(),
        }
    }
}

/// Wide scan, narrow scan around its minimum, then simplex refinement.
pub fn staged_optimize(obj: &Objective, cfg: &StagedConfig) -> Result<OptimResult> {
    let wide = grid_search_stage(obj, &cfg.wide, Stage::Wide)?;
    let narrow_box =
        cfg.wide
            .shrink_around(wide.best, cfg.narrow_half_width, cfg.narrow_resolution)?;
    let narrow = grid_search_stage(obj, &narrow_box, Stage::Narrow)?;
    let refined = refine_with(obj, narrow.best, &cfg.simplex)?;

    let (best, value) = [
        (wide.best, wide.value),
        (narrow.best, narrow.value),
        (refined.best, refined.value),
    ]
    .into_iter()
    .fold((wide.best, f64::INFINITY), |acc, c| {
        if c.1 < acc.1 {
            c
        } else {
            acc
        }
    });
    let check = obj.value(best.0, best.1)?;
    debug_assert_eq!(check, value);

    let mut trace = wide.trace;
    trace.extend(narrow.trace);
    trace.extend(refined.trace);
    let mut surfaces = wide.surfaces;
    surfaces.extend(narrow.surfaces);
    Ok(OptimResult {
        best,
        value: check,
        trace,
        surfaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{Branch, RealTransfer3};
    use crate::sensitivity::{FrequencyGrid, SensitivityConfig};

    fn objective() -> Objective {
        Objective::new(
            &RealTransfer3::reference(),
            Branch::Negative,
            FrequencyGrid::default(),
            SensitivityConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn lattice_is_row_major() {
        let b = SearchBox::new((0.0, 1.0), (10.0, 12.0), 3).unwrap();
        assert_eq!(
            b.lattice(),
            vec![
                (0.0, 10.0),
                (0.0, 11.0),
                (0.0, 12.0),
                (0.5, 10.0),
                (0.5, 11.0),
                (0.5, 12.0),
                (1.0, 10.0),
                (1.0, 11.0),
                (1.0, 12.0)
            ]
        );
    }

    #[test]
    fn invalid_boxes() {
        assert!(SearchBox::new((1.0, 0.0), (0.0, 1.0), 5).is_err());
        assert!(SearchBox::new((0.0, 1.0), (0.0, f64::NAN), 5).is_err());
        assert!(SearchBox::new((0.0, 1.0), (0.0, 1.0), 1).is_err());
        assert!(SearchBox::parse("0,1,2", 5).is_err());
        assert!(SearchBox::parse("0,1,x,3", 5).is_err());
        assert_eq!(
            SearchBox::parse("-1, 1, -2, 2", 7).unwrap(),
            SearchBox::new((-1.0, 1.0), (-2.0, 2.0), 7).unwrap()
        );
    }

    #[test]
    fn shrink_clips_to_parent() {
        let b = SearchBox::wide();
        let n = b.shrink_around((-10.0, 0.0), 1.5, 31).unwrap();
        assert_eq!(n.a3, (-10.0, -9.25));
        assert_eq!(n.b2, (-0.75, 0.75));
    }

    #[test]
    fn collapsed_box_samples_one_point() {
        let obj = objective();
        let b = SearchBox::new((0.0, 0.0), (0.0, 0.0), 5).unwrap();
        let r = grid_search(&obj, &b).unwrap();
        assert_eq!(r.best, (0.0, 0.0));
        assert_eq!(r.value, obj.value(0.0, 0.0).unwrap());
        assert_eq!(r.surfaces[0].samples.len(), 1);
    }

    #[test]
    fn lattice_minimum_bounds_every_sample() {
        let obj = objective();
        let b = SearchBox::new((-1.0, 1.0), (-2.0, 0.0), 5).unwrap();
        let r = grid_search(&obj, &b).unwrap();
        assert!(r.surfaces[0].samples.iter().all(|s| r.value <= s.s_rcs));
    }

    #[test]
    fn refinement_improves_the_origin() {
        let obj = objective();
        let s0 = obj.value(0.0, 0.0).unwrap();
        let r = refine(&obj, (0.0, 0.0)).unwrap();
        assert!(r.value < s0);
        let values: Vec<f64> = r.trace.iter().map(|t| t.best_value).collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(r.value, obj.value(r.best.0, r.best.1).unwrap());
    }
}
