//! Quadrature, error metrics, convergence-order fits, parameter sweeps and
//! non-orthogonality witnesses.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factors::{FactorKind, ParamVector};
use crate::grid::{Indicator, UniformGrid};
use crate::polyoracle::PeriodicPolySpline;
use crate::power::power_spline;
use crate::spline::{FundamentalBasis, SplineSpec, TrigSpline};
use crate::sum::Neumaier;
use crate::trigpoly::{eval_tm, SampleSet};

/// Composite Simpson rule for `∫_a^b f` over `panels` panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> Result<f64> {
    if panels < 2 || panels % 2 == 1 {
        return Err(Error::OddPanels(panels));
    }
    let h = (b - a) / panels as f64;
    let mut acc = Neumaier::new();
    acc.add(f(a));
    acc.add(f(b));
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc.add(w * f(a + h * i as f64));
    }
    Ok(acc.value() * h / 3.0)
}

/// Simpson rule over `[0, 2π]` from samples `g(2πp/P)`, `p = 0..P`, of a
/// periodic integrand (the value at `2π` is taken from `p = 0`).
pub fn simpson_periodic(values: &[f64]) -> Result<f64> {
    let panels = values.len();
    if panels < 2 || panels % 2 == 1 {
        return Err(Error::OddPanels(panels));
    }
    let h = TAU / panels as f64;
    let mut acc = Neumaier::new();
    acc.add(2.0 * values[0]);
    for (i, v) in values.iter().enumerate().skip(1) {
        acc.add(if i % 2 == 1 { 4.0 } else { 2.0 } * v);
    }
    Ok(acc.value() * h / 3.0)
}

/// `∫₀^{2π} tm_k tm_j`; equals `(2π/N) δ_kj`.
pub fn tm_inner_product(grid: &UniformGrid, k: usize, j: usize, panels: usize) -> Result<f64> {
    grid.node(k)?;
    grid.node(j)?;
    simpson(
        |t| eval_tm(grid, k, t).unwrap_or(f64::NAN) * eval_tm(grid, j, t).unwrap_or(f64::NAN),
        0.0,
        TAU,
        panels,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub sup_err: f64,
    pub l2_err: f64,
    pub points: usize,
}

/// Error metrics between two sample vectors taken at `t_p = 2πp/P`.
pub fn error_stats_from_samples(a: &[f64], b: &[f64]) -> Result<ErrorStats> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::Invalid("error statistics need at least 2 points".into()));
    }
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let sup_err = diff.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let sq: Vec<f64> = diff.iter().map(|d| d * d).collect();
    // periodic samples: Simpson for even counts, trapezoid otherwise
    let integral = if sq.len() % 2 == 0 {
        simpson_periodic(&sq)?
    } else {
        TAU / sq.len() as f64 * sq.iter().copied().collect::<Neumaier>().value()
    };
    Ok(ErrorStats {
        sup_err,
        l2_err: integral.max(0.0).sqrt(),
        points: a.len(),
    })
}

/// Error metrics of `fa - fb` over `points` uniform samples of `[0, 2π)`.
pub fn error_stats(fa: impl Fn(f64) -> f64, fb: impl Fn(f64) -> f64, points: usize) -> Result<ErrorStats> {
    let ts = crate::spline::uniform_points(points);
    let a: Vec<f64> = ts.iter().map(|&t| fa(t)).collect();
    let b: Vec<f64> = ts.iter().map(|&t| fb(t)).collect();
    error_stats_from_samples(&a, &b)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// `(N, sup_err)`
    pub samples: Vec<(usize, f64)>,
    /// Slope of `log(sup_err)` against `log(N)`.
    pub slope: f64,
    /// `-slope`
    pub order: f64,
    /// All errors are at rounding level; the slope is meaningless.
    pub exact: bool,
}

/// Points used by [`convergence_order`] to measure the sup error.
pub const CONVERGENCE_POINTS: usize = 2048;

/// Measures how fast `St^(0,0)(Γ = H, ν, r)` interpolating `f` converges as
/// `N` grows.
pub fn convergence_order(
    f: impl Fn(f64) -> f64 + Sync,
    r: usize,
    kind: FactorKind,
    gamma: ParamVector,
    sizes: &[usize],
) -> Result<ConvergenceReport> {
    if sizes.len() < 3 {
        return Err(Error::DegenerateFit(sizes.len()));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) || sizes.iter().any(|n| n % 2 == 0) {
        return Err(Error::InvalidGridSequence);
    }
    let spec = SplineSpec::new(gamma, gamma, kind, r, Indicator::Zero, Indicator::Zero)?;
    let ts = crate::spline::uniform_points(CONVERGENCE_POINTS);
    let exact_values: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let scale = exact_values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut samples = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let s = SampleSet::from_fn(UniformGrid::new(size, Indicator::Zero)?, &f)?;
        let spline = TrigSpline::build(&s, spec)?;
        let approx = spline.eval_uniform(CONVERGENCE_POINTS, 0)?;
        let stats = error_stats_from_samples(&approx, &exact_values)?;
        samples.push((size, stats.sup_err));
    }
    let exact = samples.iter().all(|&(_, e)| e <= 1e-12 * scale);
    let x: Vec<f64> = samples.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let y: Vec<f64> = samples.iter().map(|&(_, e)| e.max(f64::MIN_POSITIVE).ln()).collect();
    let slope = fit_slope(&x, &y);
    Ok(ConvergenceReport {
        samples,
        slope,
        order: -slope,
        exact,
    })
}

/// Parameter values visited by [`sweep_power`]; `γ1 = η1 = 1` throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub values: Vec<f64>,
    /// Tie `H` to `Γ` in every cell.
    pub equal_params: bool,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            values: vec![-1.0, -0.5, 0.0, 0.5, 1.0, 1.5],
            equal_params: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellFlag {
    Ok,
    Winner,
    Degenerate,
}

impl CellFlag {
    pub fn name(self) -> &'static str {
        match self {
            CellFlag::Ok => "ok",
            CellFlag::Winner => "winner",
            CellFlag::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub gamma: ParamVector,
    pub eta: ParamVector,
    /// `None` when the cell hit a degenerate interpolation factor.
    pub power: Option<f64>,
    pub flag: CellFlag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    /// `P(Sp_r, q)` of the polynomial spline, by quadrature.
    pub baseline_power: f64,
    pub winners: Vec<SweepCell>,
}

/// Panels per knot interval for the polynomial baseline integral.
const BASELINE_PANELS_PER_INTERVAL: usize = 128;

/// `P(Sp_r, q)` of the periodic polynomial spline of degree `r ∈ {1, 3}`.
pub fn polynomial_power(samples: &SampleSet, r: usize, q: usize) -> Result<f64> {
    let oracle = match r {
        1 => PeriodicPolySpline::linear(samples),
        3 => PeriodicPolySpline::cubic(samples)?,
        other => return Err(Error::UnsupportedBaseline(other)),
    };
    if q > r {
        return Err(Error::DerivativeOrderTooHigh { q, r });
    }
    let size = samples.grid().len();
    let h = samples.grid().step();
    let t0 = samples.grid().nodes()[0];
    // integrate interval by interval so every panel sits inside one polynomial piece
    let mut acc = Neumaier::new();
    for j in 0..size {
        let a = t0 + j as f64 * h;
        let piece = simpson(
            |t| {
                let x = (t - a).clamp(0.0, h);
                let v = oracle.eval(a + x.min(h * (1.0 - 1e-15)), q).unwrap_or(f64::NAN);
                v * v
            },
            a,
            a + h,
            BASELINE_PANELS_PER_INTERVAL,
        )?;
        acc.add(piece);
    }
    Ok(acc.value() / std::f64::consts::PI)
}

/// Evaluates `P(St^(0,0)(Γ, H, ν, r), q)` over a grid of parameter vectors
/// and compares each cell with the polynomial spline of degree `r`.
pub fn sweep_power(samples: &SampleSet, r: usize, kind: FactorKind, q: usize, grid: &SweepGrid) -> Result<SweepResult> {
    if samples.grid().indicator() != Indicator::Zero {
        return Err(Error::GridMismatch {
            samples: samples.grid().indicator().value(),
            spec: 0,
        });
    }
    let base = SplineSpec::simple(kind, r, Indicator::Zero, Indicator::Zero)?;
    base.check_order(q, false)?;
    let baseline_power = polynomial_power(samples, r, q)?;
    let mut params = Vec::new();
    for &g2 in &grid.values {
        for &g3 in &grid.values {
            let gamma = ParamVector::new(1.0, g2, g3)?;
            if grid.equal_params {
                params.push((gamma, gamma));
            } else {
                for &h2 in &grid.values {
                    for &h3 in &grid.values {
                        params.push((gamma, ParamVector::new(1.0, h2, h3)?));
                    }
                }
            }
        }
    }
    let cells: Vec<SweepCell> = params
        .par_iter()
        .map(|&(gamma, eta)| {
            let power = TrigSpline::build(samples, base.with_params(gamma, eta))
                .and_then(|s| power_spline(&s, q));
            match power {
                Ok(p) => Ok(SweepCell {
                    gamma,
                    eta,
                    power: Some(p),
                    flag: if p < baseline_power { CellFlag::Winner } else { CellFlag::Ok },
                }),
                Err(Error::DegenerateFactor { .. }) => Ok(SweepCell {
                    gamma,
                    eta,
                    power: None,
                    flag: CellFlag::Degenerate,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let winners = cells.iter().copied().filter(|c| c.flag == CellFlag::Winner).collect();
    Ok(SweepResult {
        cells,
        baseline_power,
        winners,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityWitness {
    pub k: usize,
    pub j: usize,
    /// `∫₀^{2π} st_k st_j`
    pub value: f64,
}

pub const WITNESS_THRESHOLD: f64 = 1e-6;

/// Finds `k ≠ j` with `|∫ st_k st_j| > 1e-6`; the pair with the largest
/// inner product is returned.
pub fn orthogonality_witness(spec: &SplineSpec, grid: &UniformGrid, panels: usize) -> Result<OrthogonalityWitness> {
    if spec.gamma != spec.eta {
        return Err(Error::FundamentalRequiresEqualParams);
    }
    if !spec.gamma.has_aliases() {
        return Err(Error::OrthogonalBasis);
    }
    let basis = FundamentalBasis::new(*spec, grid)?;
    let size = grid.len();
    let curves = (1..=size)
        .map(|l| basis.as_spline(l)?.eval_uniform(panels, 0))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<OrthogonalityWitness> = None;
    for k in 0..size {
        for j in k + 1..size {
            let prod: Vec<f64> = curves[k].iter().zip(&curves[j]).map(|(a, b)| a * b).collect();
            let value = simpson_periodic(&prod)?;
            if best.is_none_or(|b| value.abs() > b.value.abs()) {
                best = Some(OrthogonalityWitness { k: k + 1, j: j + 1, value });
            }
        }
    }
    match best {
        Some(w) if w.value.abs() > WITNESS_THRESHOLD => Ok(w),
        _ => Err(Error::NoWitnessFound {
            threshold: WITNESS_THRESHOLD,
        }),
    }
}
