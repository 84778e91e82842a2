//! Classical periodic polynomial splines (broken line and cubic) used as
//! independent oracles for the trigonometric splines.
//!
//! The cubic spline is built from its moments `M_j = S''(t_j)`, which solve the
//! cyclic system `M_{j-1} + 4 M_j + M_{j+1} = (6/h²)(f_{j-1} - 2 f_j + f_{j+1})`.

use crate::error::{Error, Result};
use crate::factors::{FactorKind, TailControl};
use crate::grid::{wrap_to_period, Indicator, UniformGrid};
use crate::spline::{SplineSpec, TrigSpline};
use crate::trigpoly::SampleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Linear,
    Cubic,
}

impl Degree {
    pub fn value(self) -> usize {
        match self {
            Degree::Linear => 1,
            Degree::Cubic => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPolySpline {
    grid: UniformGrid,
    degree: Degree,
    values: Vec<f64>,
    moments: Vec<f64>,
}

impl PeriodicPolySpline {
    /// Periodic piecewise-linear interpolant.
    pub fn linear(samples: &SampleSet) -> Self {
        PeriodicPolySpline {
            grid: samples.grid().clone(),
            degree: Degree::Linear,
            values: samples.values().to_vec(),
            moments: vec![0.0; samples.grid().len()],
        }
    }

    /// Periodic cubic interpolant with knots at the sample nodes.
    pub fn cubic(samples: &SampleSet) -> Result<Self> {
        let size = samples.grid().len();
        let h = samples.grid().step();
        let f = samples.values();
        let rhs: Vec<f64> = (0..size)
            .map(|j| {
                let prev = f[(j + size - 1) % size];
                let next = f[(j + 1) % size];
                6.0 / (h * h) * (prev - 2.0 * f[j] + next)
            })
            .collect();
        let ones = vec![1.0; size];
        let fours = vec![4.0; size];
        let moments = solve_cyclic_tridiagonal(&ones, &fours, &ones, 1.0, 1.0, &rhs)?;
        Ok(PeriodicPolySpline {
            grid: samples.grid().clone(),
            degree: Degree::Cubic,
            values: f.to_vec(),
            moments,
        })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nodal second derivatives; zero for the broken line.
    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    /// `q`-th derivative at `t`. At a knot, one-sided derivatives are taken
    /// from the interval to the right.
    pub fn eval(&self, t: f64, q: usize) -> Result<f64> {
        if q > self.degree.value() {
            return Err(Error::DerivativeOrderTooHigh {
                q,
                r: self.degree.value(),
            });
        }
        let size = self.grid.len();
        let h = self.grid.step();
        let u = wrap_to_period(t - self.grid.nodes()[0])?;
        let j = ((u / h).floor() as usize).min(size - 1);
        let x = (u - j as f64 * h).max(0.0);
        let (f0, f1) = (self.values[j], self.values[(j + 1) % size]);
        if self.degree == Degree::Linear {
            return Ok(match q {
                0 => f0 + (f1 - f0) * x / h,
                _ => (f1 - f0) / h,
            });
        }
        let (m0, m1) = (self.moments[j], self.moments[(j + 1) % size]);
        let a = h - x;
        let c0 = f0 - m0 * h * h / 6.0;
        let c1 = f1 - m1 * h * h / 6.0;
        Ok(match q {
            0 => (m0 * a.powi(3) + m1 * x.powi(3)) / (6.0 * h) + (c0 * a + c1 * x) / h,
            1 => (-m0 * a * a + m1 * x * x) / (2.0 * h) + (c1 - c0) / h,
            2 => (m0 * a + m1 * x) / h,
            _ => (m1 - m0) / h,
        })
    }

    /// `q`-th derivative approached from the left of knot `j` (1-based).
    pub fn eval_left_of_node(&self, j: usize, q: usize) -> Result<f64> {
        let size = self.grid.len();
        let h = self.grid.step();
        let prev = (j + size - 2) % size;
        // evaluate the polynomial piece of interval `prev` at its right end
        let (f0, f1) = (self.values[prev], self.values[(prev + 1) % size]);
        if self.degree == Degree::Linear {
            return Ok(if q == 0 { f1 } else { (f1 - f0) / h });
        }
        let (m0, m1) = (self.moments[prev], self.moments[(prev + 1) % size]);
        let c0 = f0 - m0 * h * h / 6.0;
        let c1 = f1 - m1 * h * h / 6.0;
        Ok(match q {
            0 => m1 * h * h / 6.0 + c1,
            1 => m1 * h / 2.0 + (c1 - c0) / h,
            2 => m1,
            _ => (m1 - m0) / h,
        })
    }
}

/// Solves the cyclic tridiagonal system with sub-diagonal `sub`, diagonal
/// `diag`, super-diagonal `sup` (entry `i` couples row `i` to `i-1`/`i+1`),
/// and corners `A[n-1][0] = alpha`, `A[0][n-1] = beta`.
///
/// Thomas algorithm plus a Sherman–Morrison rank-one correction.
pub fn solve_cyclic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    alpha: f64,
    beta: f64,
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    if n < 3 || sub.len() != n || sup.len() != n || rhs.len() != n {
        return Err(Error::Invalid("cyclic system needs n >= 3 and matching lengths".into()));
    }
    let gamma = -diag[0];
    let mut bb = diag.to_vec();
    bb[0] = diag[0] - gamma;
    bb[n - 1] = diag[n - 1] - alpha * beta / gamma;
    let x = thomas(sub, &bb, sup, rhs)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(sub, &bb, sup, &u)?;
    let denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::SingularSystem);
    }
    let fact = (x[0] + beta * x[n - 1] / gamma) / denom;
    Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut gam = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut bet = diag[0];
    if bet == 0.0 {
        return Err(Error::SingularSystem);
    }
    x[0] = rhs[0] / bet;
    for i in 1..n {
        gam[i] = sup[i - 1] / bet;
        bet = diag[i] - sub[i] * gam[i];
        if bet == 0.0 {
            return Err(Error::SingularSystem);
        }
        x[i] = (rhs[i] - sub[i] * x[i - 1]) / bet;
    }
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= gam[i + 1] * next;
    }
    Ok(x)
}

/// Tail budget for [`moments_via_trigspline`]: the second derivative decays
/// like `k^-2`, so the default budget leaves only ~1e-6 headroom.
pub const MOMENT_TAIL_MAX_TERMS: usize = 2_000_000;

/// `TailControl` used by the moment comparison.
pub fn moment_tail() -> TailControl {
    TailControl { max_terms: MOMENT_TAIL_MAX_TERMS, ..TailControl::default() }
}

/// Moments of the periodic cubic spline read off the trigonometric route:
/// the second derivative of `St^(0,0)(ν1, r = 3)` at the nodes.
pub fn moments_via_trigspline(samples: &SampleSet, tail: TailControl) -> Result<Vec<f64>> {
    let spec = SplineSpec::simple(FactorKind::Nu1, 3, Indicator::Zero, Indicator::Zero)?.with_tail(tail);
    let spline = TrigSpline::build(samples, spec)?;
    // grid-0 nodes are exactly the abscissae 2πp/N of the uniform evaluator
    spline.eval_uniform(samples.grid().len(), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    /// Dense Gaussian elimination with partial pivoting.
    fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
            a.swap(col, piv);
            b.swap(col, piv);
            for row in col + 1..n {
                let f = a[row][col] / a[col][col];
                for c in col..n {
                    a[row][c] -= f * a[col][c];
                }
                b[row] -= f * b[col];
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|c| a[i][c] * x[c]).sum();
            x[i] = (b[i] - s) / a[i][i];
        }
        x
    }

    fn grid(n: usize) -> UniformGrid {
        UniformGrid::new(n, Indicator::Zero).unwrap()
    }

    fn cyclic_141(n: usize) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = 4.0;
            a[i][(i + 1) % n] += 1.0;
            a[i][(i + n - 1) % n] += 1.0;
        }
        a
    }

    #[test]
    fn linear_examples() {
        let s = SampleSet::new(grid(3), vec![1.0, 0.0, 0.0]).unwrap();
        let l = PeriodicPolySpline::linear(&s);
        assert!((l.eval(PI / 3.0, 0).unwrap() - 0.5).abs() < 1e-15);
        for (j, &t) in s.grid().nodes().iter().enumerate() {
            assert!((l.eval(t, 0).unwrap() - s.values()[j]).abs() < 1e-15);
        }
        let h = TAU / 3.0;
        assert!((l.eval(0.3, 1).unwrap() + 1.0 / h).abs() < 1e-15);
        assert!(l.eval(0.3, 2).is_err());
        let c = PeriodicPolySpline::linear(&SampleSet::new(grid(5), vec![2.0; 5]).unwrap());
        assert!((c.eval(1.234, 0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn constant_cubic_has_zero_moments() {
        let s = SampleSet::new(grid(7), vec![-0.4; 7]).unwrap();
        let c = PeriodicPolySpline::cubic(&s).unwrap();
        assert!(c.moments().iter().all(|m| m.abs() < 1e-14));
        assert!((c.eval(2.0, 0).unwrap() + 0.4).abs() < 1e-14);
    }

    #[test]
    fn cyclic_residual_for_sine() {
        let s = SampleSet::from_fn(grid(9), f64::sin).unwrap();
        let c = PeriodicPolySpline::cubic(&s).unwrap();
        let h = s.grid().step();
        let m = c.moments();
        let f = s.values();
        for j in 0..9 {
            let lhs = m[(j + 8) % 9] + 4.0 * m[j] + m[(j + 1) % 9];
            let rhs = 6.0 / (h * h) * (f[(j + 8) % 9] - 2.0 * f[j] + f[(j + 1) % 9]);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_dense_elimination() {
        for n in [3usize, 5, 9, 17] {
            let mut f = vec![0.0; n];
            f[0] = 1.0;
            let s = SampleSet::new(grid(n), f.clone()).unwrap();
            let c = PeriodicPolySpline::cubic(&s).unwrap();
            let h = s.grid().step();
            let rhs: Vec<f64> = (0..n)
                .map(|j| 6.0 / (h * h) * (f[(j + n - 1) % n] - 2.0 * f[j] + f[(j + 1) % n]))
                .collect();
            let dense = dense_solve(cyclic_141(n), rhs);
            for (a, b) in c.moments().iter().zip(&dense) {
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn general_cyclic_solve() {
        let n = 6;
        let sub = [0.0, 1.0, -2.0, 0.5, 1.5, 0.3];
        let diag = [5.0, 6.0, 7.0, 5.5, 6.5, 8.0];
        let sup = [1.0, 0.7, 1.1, -0.4, 2.0, 0.0];
        let (alpha, beta) = (0.9, -1.2);
        let rhs = [1.0, 2.0, 3.0, -1.0, 0.5, 0.25];
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = diag[i];
            if i > 0 {
                a[i][i - 1] = sub[i];
            }
            if i + 1 < n {
                a[i][i + 1] = sup[i];
            }
        }
        a[n - 1][0] = alpha;
        a[0][n - 1] = beta;
        let want = dense_solve(a, rhs.to_vec());
        let got = solve_cyclic_tridiagonal(&sub, &diag, &sup, alpha, beta, &rhs).unwrap();
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_is_c2_periodic_and_interpolating() {
        let s = SampleSet::from_fn(grid(9), |t| (t.sin()).exp()).unwrap();
        let c = PeriodicPolySpline::cubic(&s).unwrap();
        for j in 1..=9 {
            let t = s.grid().node(j).unwrap();
            assert!((c.eval(t, 0).unwrap() - s.values()[j - 1]).abs() < 1e-13);
            for q in 0..=2 {
                let right = c.eval(t, q).unwrap();
                let left = c.eval_left_of_node(j, q).unwrap();
                assert!((right - left).abs() < 1e-10, "j={j} q={q}: {left} vs {right}");
            }
        }
        for t in [0.1, 1.7, 4.4] {
            assert!((c.eval(t, 0).unwrap() - c.eval(t + TAU, 0).unwrap()).abs() < 1e-13);
        }
        let t = s.grid().node(4).unwrap();
        assert!((c.eval(t, 2).unwrap() - c.moments()[3]).abs() < 1e-12);
        assert!(c.eval(t, 4).is_err());
    }

    #[test]
    fn moments_of_constant_vanish() {
        let s = SampleSet::new(grid(5), vec![3.0; 5]).unwrap();
        let m = moments_via_trigspline(&s, TailControl::default()).unwrap();
        assert!(m.iter().all(|v| v.abs() < 1e-12));
    }
}
