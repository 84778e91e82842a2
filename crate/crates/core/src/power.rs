//! Average power `P(f, q) = (1/π) ∫₀^{2π} [f^{(q)}(t)]² dt` and the half-norm.
//!
//! For a spline the series route sums the squared harmonic amplitudes:
//! `P = a0²/2 [q = 0] + pc + ps`, where each harmonic of frequency `ω`
//! contributes its squared amplitude times `ω^{2q}`. The quadrature route
//! integrates the evaluated derivative with Simpson's rule.

use std::f64::consts::PI;

use crate::analysis::simpson_periodic;
use crate::error::Result;
use crate::factors::{ParamVector, TailPlan};
use crate::spline::TrigSpline;
use crate::sum::Neumaier;
use crate::trigpoly::FourierCoeffs;

/// Simpson panels used by [`power_spline_series`] for the quadrature route.
pub const DEFAULT_POWER_PANELS: usize = 65536;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerReport {
    pub q: usize,
    /// `a0_term + pc + ps`
    pub series_value: f64,
    pub quadrature_value: f64,
    pub pc: f64,
    pub ps: f64,
    pub a0_term: f64,
}

/// `P(T_n, q) = a0²/2 [q = 0] + Σ k^{2q} (a_k² + b_k²)`.
pub fn power_trigpoly(c: &FourierCoeffs, q: usize) -> f64 {
    let mut acc = Neumaier::new();
    if q == 0 {
        acc.add(0.5 * c.a0 * c.a0);
    }
    for (i, (a, b)) in c.a.iter().zip(&c.b).enumerate() {
        let w = ((i + 1) as f64).powi(2 * q as i32);
        acc.add(w * (a * a + b * b));
    }
    acc.value()
}

/// Series-route terms `(a0_term, pc, ps)` of `P(St, q)`.
pub fn power_series_terms(s: &TrigSpline, q: usize) -> Result<(f64, f64, f64)> {
    let spec = s.spec();
    spec.check_order(q, false)?;
    let size = s.size();
    let p = (1 + spec.r - q) as i32;
    let coeffs = s.coeffs();
    let a0_term = if q == 0 { 0.5 * coeffs.a0 * coeffs.a0 } else { 0.0 };
    let branch = |params: &ParamVector, amps: &[f64], factors: &[f64], ck: &dyn Fn(usize) -> f64| -> Result<f64> {
        let sq = params.as_array().map(|g| g * g);
        let plan = TailPlan::for_weights(sq, 2 * p, size, &spec.tail)?;
        let mut total = Neumaier::new();
        for k in 1..=(size - 1) / 2 {
            let kf = k as f64;
            let nf = size as f64;
            let mut energy = Neumaier::new();
            energy.add(sq[0] * kf.powi(-2 * p));
            for m in 1..=plan.terms {
                let mf = m as f64;
                energy.add(sq[1] * (mf * nf + kf).powi(-2 * p));
                energy.add(sq[2] * (mf * nf - kf).powi(-2 * p));
            }
            // factors carry c_k; the alias amplitudes above do not
            let ratio = amps[k - 1] * ck(k) / factors[k - 1];
            total.add(ratio * ratio * energy.value());
        }
        Ok(total.value())
    };
    let ck = |k: usize| crate::factors::envelope(spec.kind, k, spec.r, size);
    let pc = branch(&spec.gamma, &coeffs.a, s.hc(), &ck)?;
    let ps = branch(&spec.eta, &coeffs.b, s.hs(), &ck)?;
    Ok((a0_term, pc, ps))
}

/// Both routes to `P(St, q)`, quadrature with [`DEFAULT_POWER_PANELS`].
pub fn power_spline_series(s: &TrigSpline, q: usize) -> Result<PowerReport> {
    power_spline_report(s, q, DEFAULT_POWER_PANELS)
}

/// Both routes to `P(St, q)` with an explicit even Simpson panel count.
pub fn power_spline_report(s: &TrigSpline, q: usize, panels: usize) -> Result<PowerReport> {
    let (a0_term, pc, ps) = power_series_terms(s, q)?;
    Ok(PowerReport {
        q,
        series_value: a0_term + pc + ps,
        quadrature_value: power_by_quadrature(s, q, panels)?,
        pc,
        ps,
        a0_term,
    })
}

/// `(1/π) ∫ [St^{(q)}]²` by composite Simpson over `panels` uniform panels.
pub fn power_by_quadrature(s: &TrigSpline, q: usize, panels: usize) -> Result<f64> {
    let values = s.eval_uniform(panels, q)?;
    let squared: Vec<f64> = values.iter().map(|v| v * v).collect();
    Ok(simpson_periodic(&squared)? / PI)
}

/// Series-route power only.
pub fn power_spline(s: &TrigSpline, q: usize) -> Result<f64> {
    let (a, c, d) = power_series_terms(s, q)?;
    Ok(a + c + d)
}

/// `(∫₀^{2π} |T_n^{(n)}|²)^{1/2}`.
pub fn half_norm_trigpoly(c: &FourierCoeffs, n: usize) -> f64 {
    (PI * power_trigpoly(c, n)).sqrt()
}

/// `(∫₀^{2π} |St^{(n)}|²)^{1/2}`, `n <= r - 1`.
pub fn half_norm_spline(s: &TrigSpline, n: usize) -> Result<f64> {
    Ok((PI * power_spline(s, n)?).sqrt())
}
