//! The interpolation trigonometric polynomial `T_n` on an odd uniform grid.
//!
//! Coefficients follow the plain DFT sums
//! `a_k = (2/N) Σ f_j cos(k t_j)`, `b_k = (2/N) Σ f_j sin(k t_j)`, with `a_0`
//! stored unhalved so that the polynomial reads `a_0/2 + Σ a_k cos kt + b_k sin kt`.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{check_finite, Error, Result};
use crate::grid::{wrap_to_period, UniformGrid};
use crate::sum::{compensated_sum, Neumaier};

/// Function values `f_i = f(t_i)` on the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        for &v in &values {
            check_finite(v)?;
        }
        Ok(SampleSet { grid, values })
    }

    /// Samples `f` at every node of `grid`.
    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        SampleSet::new(grid, values)
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    pub a0: f64,
    /// `a_1..a_n`
    pub a: Vec<f64>,
    /// `b_1..b_n`
    pub b: Vec<f64>,
    grid: UniformGrid,
}

impl FourierCoeffs {
    /// The grid whose samples produced these coefficients.
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn harmonics(&self) -> usize {
        self.a.len()
    }

    /// `T_n(t)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.eval_deriv(t, 0)
    }

    /// `q`-th derivative of `T_n` at `t`.
    pub fn eval_deriv(&self, t: f64, q: usize) -> Result<f64> {
        let t = wrap_to_period(t)?;
        let phase = q as f64 * FRAC_PI_2;
        let mut acc = Neumaier::new();
        if q == 0 {
            acc.add(0.5 * self.a0);
        }
        for (i, (&ak, &bk)) in self.a.iter().zip(&self.b).enumerate() {
            let k = (i + 1) as f64;
            let arg = (k * t).rem_euclid(TAU) + phase;
            let (s, c) = arg.sin_cos();
            acc.add(k.powi(q as i32) * (ak * c + bk * s));
        }
        Ok(acc.value())
    }
}

/// DFT coefficients of the interpolation polynomial through `samples`.
pub fn dft_coeffs(samples: &SampleSet) -> FourierCoeffs {
    let grid = samples.grid().clone();
    let size = grid.len();
    let scale = 2.0 / size as f64;
    let f = samples.values();
    let a0 = scale * compensated_sum(f.iter().copied());
    let mut a = Vec::with_capacity(grid.half());
    let mut b = Vec::with_capacity(grid.half());
    for k in 1..=grid.half() {
        let mut ca = Neumaier::new();
        let mut cb = Neumaier::new();
        for (&fj, &tj) in f.iter().zip(grid.nodes()) {
            let (s, c) = (k as f64 * tj).rem_euclid(TAU).sin_cos();
            ca.add(fj * c);
            cb.add(fj * s);
        }
        a.push(scale * ca.value());
        b.push(scale * cb.value());
    }
    FourierCoeffs { a0, a, b, grid }
}

/// Fundamental trigonometric polynomial `tm_k(t) = (1/N)[1 + 2 Σ_j cos j(t - t_k)]`.
pub fn eval_tm(grid: &UniformGrid, k: usize, t: f64) -> Result<f64> {
    let tk = grid.node(k)?;
    let d = wrap_to_period(check_finite(t)? - tk)?;
    let mut acc = Neumaier::new();
    acc.add(1.0);
    for j in 1..=grid.half() {
        acc.add(2.0 * (j as f64 * d).rem_euclid(TAU).cos());
    }
    Ok(acc.value() / grid.len() as f64)
}

/// Both sides of the node-level Parseval identity
/// `a_0²/2 + Σ (a_k² + b_k²) = (2/N) Σ f_j²`.
pub fn node_parseval(samples: &SampleSet) -> (f64, f64) {
    let c = dft_coeffs(samples);
    let lhs = compensated_sum(
        std::iter::once(0.5 * c.a0 * c.a0).chain(c.a.iter().zip(&c.b).map(|(a, b)| a * a + b * b)),
    );
    let rhs = 2.0 / samples.grid().len() as f64
        * compensated_sum(samples.values().iter().map(|f| f * f));
    (lhs, rhs)
}
