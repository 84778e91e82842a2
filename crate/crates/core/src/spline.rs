//! Trigonometric interpolation splines `St^(I1,I2)(Γ, H, ν, r, t)`.
//!
//! Harmonic `k = 1..n` of the interpolation polynomial on the `I2` grid is
//! spread over the alias frequencies `mN ± k`, weighted by the convergence
//! factors and renormalized by `hc_k`/`hs_k` so the nodes are still
//! interpolated. Derivatives are taken term by term.

use std::f64::consts::TAU;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::factors::{
    envelope, normalized_factor, AliasSigns, FactorKind, FactorSetup, ParamVector, TailControl,
    TailPlan, DEFAULT_DEGENERACY_TOL,
};
use crate::grid::{wrap_to_period, Indicator, UniformGrid};
use crate::sum::Neumaier;
use crate::trigpoly::{dft_coeffs, FourierCoeffs, SampleSet};

/// Reseed the phase recurrence from `sin_cos` this often.
const RESEED_EVERY: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplineSpec {
    pub gamma: ParamVector,
    pub eta: ParamVector,
    pub kind: FactorKind,
    /// Spline order; the spline has `r - 1` uniformly convergent derivatives.
    pub r: usize,
    /// `I1`
    pub stitch: Indicator,
    /// `I2`
    pub interp: Indicator,
    pub tail: TailControl,
    pub degeneracy_tol: f64,
}

impl SplineSpec {
    pub fn new(
        gamma: ParamVector,
        eta: ParamVector,
        kind: FactorKind,
        r: usize,
        stitch: Indicator,
        interp: Indicator,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("spline order r must be at least 1".into()));
        }
        Ok(SplineSpec {
            gamma,
            eta,
            kind,
            r,
            stitch,
            interp,
            tail: TailControl::default(),
            degeneracy_tol: DEFAULT_DEGENERACY_TOL,
        })
    }

    /// `Γ = H = (1, 1, 1)`.
    pub fn simple(kind: FactorKind, r: usize, stitch: Indicator, interp: Indicator) -> Result<Self> {
        SplineSpec::new(ParamVector::simple(), ParamVector::simple(), kind, r, stitch, interp)
    }

    pub fn with_params(mut self, gamma: ParamVector, eta: ParamVector) -> Self {
        self.gamma = gamma;
        self.eta = eta;
        self
    }

    pub fn with_tail(mut self, tail: TailControl) -> Self {
        self.tail = tail;
        self
    }

    pub fn with_indicators(mut self, stitch: Indicator, interp: Indicator) -> Self {
        self.stitch = stitch;
        self.interp = interp;
        self
    }

    pub fn setup(&self, size: usize) -> Result<FactorSetup> {
        FactorSetup::new(self.kind, self.r, size, self.stitch, self.interp)
    }

    pub(crate) fn check_order(&self, q: usize, allow_order_r: bool) -> Result<()> {
        if q < self.r || (q == self.r && allow_order_r) {
            Ok(())
        } else {
            Err(Error::DerivativeOrderTooHigh { q, r: self.r })
        }
    }

    /// Truncation of the value series at derivative order `q`, per branch.
    fn series_plans(&self, size: usize, q: usize) -> Result<(TailPlan, TailPlan)> {
        let p = (1 + self.r - q) as i32;
        Ok((
            TailPlan::for_weights(self.gamma.as_array(), p, size, &self.tail)?,
            TailPlan::for_weights(self.eta.as_array(), p, size, &self.tail)?,
        ))
    }
}

/// A value together with the truncation that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    /// Certified relative remainder bound of the truncated alias series.
    pub effective_rel_tol: f64,
    pub relaxed: bool,
}

/// Alias sums of one harmonic, normalized by `c_k`:
/// `z0 = k^{-p} e^{ikt}`, `plus = Σ σ_m (mN+k)^{-p} e^{i(mN+k)t}`,
/// `minus = Σ σ_m (mN-k)^{-p} e^{i(mN-k)t}`.
#[derive(Debug, Clone, Copy, Default)]
struct HarmonicSums {
    z0: Complex64,
    plus: Complex64,
    minus: Complex64,
}

#[derive(Debug, Clone, Copy)]
struct SeriesShape {
    size: usize,
    signs: AliasSigns,
    /// Apply `(-1)^m` from the stitching indicator.
    stitch_alt: bool,
}

impl SeriesShape {
    fn sign_plus(&self, m: usize) -> f64 {
        let s = self.signs.plus(m);
        if self.stitch_alt && m % 2 == 1 {
            -s
        } else {
            s
        }
    }

    fn sign_minus(&self, m: usize) -> f64 {
        let s = self.signs.minus(m);
        if self.stitch_alt && m % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Evaluates the alias sums of harmonic `k` at `t ∈ [0, 2π)` with decay `p`.
    ///
    /// Phases advance by the rotation `e^{iNt}` (sign flips folded in) and are
    /// reseeded from `sin_cos` at the start of every block; each block is
    /// summed directly and the block sums are accumulated with compensation.
    fn sums(&self, k: usize, t: f64, p: i32, terms: usize) -> HarmonicSums {
        let nf = self.size as f64;
        let kf = k as f64;
        let kt = (kf * t).rem_euclid(TAU);
        let base = Complex64::from_polar(kf.powi(-p), kt);
        if terms == 0 {
            return HarmonicSums {
                z0: base,
                ..Default::default()
            };
        }
        let theta_n = (nf * t).rem_euclid(TAU);
        let step = Complex64::from_polar(1.0, theta_n);
        let alt_p = self.stitch_alt ^ self.signs.plus_alternates;
        let alt_m = self.stitch_alt ^ self.signs.minus_alternates;
        let step_p = if alt_p { -step } else { step };
        let step_m = if alt_m { -step } else { step };
        let phase_at = |m: usize, sign: f64| -> Complex64 {
            let base = (m as f64 * theta_n).rem_euclid(TAU);
            Complex64::from_polar(1.0, (base + sign * kt).rem_euclid(TAU))
        };
        let (mut pr, mut pi, mut mr, mut mi) =
            (Neumaier::new(), Neumaier::new(), Neumaier::new(), Neumaier::new());
        let mut first = 1;
        while first <= terms {
            let last = (first + RESEED_EVERY - 1).min(terms);
            let mut zp = phase_at(first, 1.0) * self.sign_plus(first);
            let mut zm = phase_at(first, -1.0) * self.sign_minus(first);
            let mut bp = Complex64::new(0.0, 0.0);
            let mut bm = Complex64::new(0.0, 0.0);
            for m in first..=last {
                let x = m as f64 * nf;
                let d = ((x + kf) * (x - kf)).recip();
                bp += zp * ipow((x - kf) * d, p);
                bm += zm * ipow((x + kf) * d, p);
                zp *= step_p;
                zm *= step_m;
            }
            pr.add(bp.re);
            pi.add(bp.im);
            mr.add(bm.re);
            mi.add(bm.im);
            first = last + 1;
        }
        HarmonicSums {
            z0: base,
            plus: Complex64::new(pr.value(), pi.value()),
            minus: Complex64::new(mr.value(), mi.value()),
        }
    }
}

#[inline(always)]
fn ipow(x: f64, p: i32) -> f64 {
    match p {
        1 => x,
        2 => x * x,
        3 => x * x * x,
        4 => {
            let y = x * x;
            y * y
        }
        _ => x.powi(p),
    }
}

/// `i^q`
fn i_pow(q: usize) -> Complex64 {
    match q % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Cosine-branch value `Re(i^q (g1 z0 + g2 z+ + g3 z-))`.
fn cos_branch(g: &ParamVector, s: &HarmonicSums, rot: Complex64) -> f64 {
    (rot * (s.z0 * g.g1 + s.plus * g.g2 + s.minus * g.g3)).re
}

/// Sine-branch value `Im(i^q (h1 z0 + h2 z+ - h3 z-))`.
fn sin_branch(h: &ParamVector, s: &HarmonicSums, rot: Complex64) -> f64 {
    (rot * (s.z0 * h.g1 + s.plus * h.g2 - s.minus * h.g3)).im
}

#[derive(Debug, Clone)]
pub struct TrigSpline {
    spec: SplineSpec,
    setup: FactorSetup,
    coeffs: FourierCoeffs,
    hc: Vec<f64>,
    hs: Vec<f64>,
    /// `hc_k / c_k`, `hs_k / c_k`
    hc_norm: Vec<f64>,
    hs_norm: Vec<f64>,
    plan_c: TailPlan,
    plan_s: TailPlan,
}

impl TrigSpline {
    pub fn build(samples: &SampleSet, spec: SplineSpec) -> Result<Self> {
        let grid = samples.grid();
        if grid.indicator() != spec.interp {
            return Err(Error::GridMismatch {
                samples: grid.indicator().value(),
                spec: spec.interp.value(),
            });
        }
        let setup = spec.setup(grid.len())?;
        let coeffs = dft_coeffs(samples);
        let (plan_c, plan_s) = spec.series_plans(grid.len(), 0)?;
        let mut hc = Vec::with_capacity(setup.half());
        let mut hs = Vec::with_capacity(setup.half());
        let mut hc_norm = Vec::with_capacity(setup.half());
        let mut hs_norm = Vec::with_capacity(setup.half());
        for k in 1..=setup.half() {
            let ck = envelope(spec.kind, k, spec.r, setup.size);
            let scale = ck * (k as f64).powi(-(1 + spec.r as i32)).max(
                ((setup.size - k) as f64).powi(-(1 + spec.r as i32)),
            );
            for (params, plan, norm, full) in [
                (&spec.gamma, &plan_c, &mut hc_norm, &mut hc),
                (&spec.eta, &plan_s, &mut hs_norm, &mut hs),
            ] {
                let v = normalized_factor(params, &setup, k, plan.terms);
                let value = v * ck;
                if !(value.abs() >= spec.degeneracy_tol * params.l1() * scale) {
                    return Err(Error::DegenerateFactor { k, value });
                }
                norm.push(v);
                full.push(value);
            }
        }
        Ok(TrigSpline {
            spec,
            setup,
            coeffs,
            hc,
            hs,
            hc_norm,
            hs_norm,
            plan_c,
            plan_s,
        })
    }

    pub fn spec(&self) -> &SplineSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &FourierCoeffs {
        &self.coeffs
    }

    pub fn grid(&self) -> &UniformGrid {
        self.coeffs.grid()
    }

    pub fn size(&self) -> usize {
        self.setup.size
    }

    pub fn hc(&self) -> &[f64] {
        &self.hc
    }

    pub fn hs(&self) -> &[f64] {
        &self.hs
    }

    /// Truncation used for `hc` and `hs`.
    pub fn factor_plans(&self) -> (TailPlan, TailPlan) {
        (self.plan_c, self.plan_s)
    }

    /// `q`-th derivative at `t`, `q <= r - 1`.
    pub fn eval(&self, t: f64, q: usize) -> Result<f64> {
        self.eval_report(t, q, false).map(|e| e.value)
    }

    /// Like [`eval`](Self::eval), but `unsafe_derivative` admits `q = r`,
    /// whose series does not converge uniformly.
    pub fn eval_report(&self, t: f64, q: usize, unsafe_derivative: bool) -> Result<Evaluation> {
        self.spec.check_order(q, unsafe_derivative)?;
        let (pc, ps) = self.spec.series_plans(self.size(), q)?;
        let value = self.eval_terms(t, q, pc.terms, ps.terms)?;
        let plan = pc.combine(ps);
        Ok(Evaluation {
            value,
            effective_rel_tol: plan.effective_rel_tol,
            relaxed: plan.relaxed,
        })
    }

    /// Evaluates with an explicit alias term count on both branches.
    pub fn eval_truncated(&self, t: f64, q: usize, terms: usize) -> Result<f64> {
        self.spec.check_order(q, true)?;
        self.eval_terms(t, q, terms, terms)
    }

    fn shape(&self, stitch_alt: bool) -> SeriesShape {
        SeriesShape {
            size: self.size(),
            signs: AliasSigns::new(self.spec.kind, self.spec.r),
            stitch_alt,
        }
    }

    fn eval_terms(&self, t: f64, q: usize, terms_c: usize, terms_s: usize) -> Result<f64> {
        let t = wrap_to_period(t)?;
        let p = (1 + self.spec.r - q) as i32;
        let shape = self.shape(self.spec.stitch == Indicator::One);
        let rot = i_pow(q);
        let mut acc = Neumaier::new();
        if q == 0 {
            acc.add(0.5 * self.coeffs.a0);
        }
        for k in 1..=self.setup.half() {
            let ak = self.coeffs.a[k - 1];
            let bk = self.coeffs.b[k - 1];
            let sums_c = shape.sums(k, t, p, terms_c);
            let sums_s = if terms_s == terms_c {
                sums_c
            } else {
                shape.sums(k, t, p, terms_s)
            };
            acc.add(ak / self.hc_norm[k - 1] * cos_branch(&self.spec.gamma, &sums_c, rot));
            acc.add(bk / self.hs_norm[k - 1] * sin_branch(&self.spec.eta, &sums_s, rot));
        }
        // ω^q scaling is folded into the decay exponent p
        Ok(acc.value())
    }

    /// Evaluates at many points in parallel.
    pub fn eval_many(&self, ts: &[f64], q: usize) -> Result<Vec<f64>> {
        ts.par_iter().map(|&t| self.eval(t, q)).collect()
    }

    /// `q`-th derivative at `t_p = 2πp/points`, `p = 0..points`.
    ///
    /// Harmonics are folded modulo `points` and summed by one inverse FFT,
    /// which reproduces the truncated series exactly at these abscissae.
    pub fn eval_uniform(&self, points: usize, q: usize) -> Result<Vec<f64>> {
        self.spec.check_order(q, false)?;
        let (pc, ps) = self.spec.series_plans(self.size(), q)?;
        Ok(self.eval_uniform_terms(points, q, pc.terms, ps.terms))
    }

    fn eval_uniform_terms(&self, points: usize, q: usize, terms_c: usize, terms_s: usize) -> Vec<f64> {
        if points == 0 {
            return Vec::new();
        }
        let size = self.size();
        let p = (1 + self.spec.r - q) as i32;
        let shape = self.shape(self.spec.stitch == Indicator::One);
        let rot = i_pow(q);
        let (g, h) = (&self.spec.gamma, &self.spec.eta);
        let mut bins = vec![Complex64::new(0.0, 0.0); points];
        // A cos(ωt + qπ/2) + B sin(ωt + qπ/2) = Re((A - iB) i^q e^{iωt})
        let mut deposit = |omega: usize, a: f64, b: f64| {
            bins[omega % points] += Complex64::new(a, -b) * rot;
        };
        for k in 1..=self.setup.half() {
            let alpha = self.coeffs.a[k - 1] / self.hc_norm[k - 1];
            let beta = self.coeffs.b[k - 1] / self.hs_norm[k - 1];
            let w = (k as f64).powi(-p);
            deposit(k, alpha * g.g1 * w, beta * h.g1 * w);
            for m in 1..=terms_c.max(terms_s) {
                let (wp, wm) = (m * size + k, m * size - k);
                let ap = shape.sign_plus(m) * (wp as f64).powi(-p);
                let am = shape.sign_minus(m) * (wm as f64).powi(-p);
                let (cp, cm) = if m <= terms_c {
                    (alpha * g.g2 * ap, alpha * g.g3 * am)
                } else {
                    (0.0, 0.0)
                };
                let (sp, sm) = if m <= terms_s {
                    (beta * h.g2 * ap, -beta * h.g3 * am)
                } else {
                    (0.0, 0.0)
                };
                deposit(wp, cp, sp);
                deposit(wm, cm, sm);
            }
        }
        let fft = FftPlanner::new().plan_fft_inverse(points);
        fft.process(&mut bins);
        let dc = if q == 0 { 0.5 * self.coeffs.a0 } else { 0.0 };
        bins.iter().map(|z| z.re + dc).collect()
    }
}

/// Cardinal basis `st_1..st_N` of splines with `Γ = H` on the `I2` grid.
#[derive(Debug, Clone)]
pub struct FundamentalBasis {
    spec: SplineSpec,
    grid: UniformGrid,
    hc_norm: Vec<f64>,
}

impl FundamentalBasis {
    pub fn new(spec: SplineSpec, grid: &UniformGrid) -> Result<Self> {
        if spec.gamma != spec.eta {
            return Err(Error::FundamentalRequiresEqualParams);
        }
        if grid.indicator() != spec.interp {
            return Err(Error::GridMismatch {
                samples: grid.indicator().value(),
                spec: spec.interp.value(),
            });
        }
        let setup = spec.setup(grid.len())?;
        let plan = TailPlan::for_weights(spec.gamma.as_array(), 1 + spec.r as i32, grid.len(), &spec.tail)?;
        let mut hc_norm = Vec::with_capacity(setup.half());
        for k in 1..=setup.half() {
            let v = normalized_factor(&spec.gamma, &setup, k, plan.terms);
            let ck = envelope(spec.kind, k, spec.r, setup.size);
            let scale = ck * (k as f64).powi(-(1 + spec.r as i32)).max(
                ((setup.size - k) as f64).powi(-(1 + spec.r as i32)),
            );
            if !((v * ck).abs() >= spec.degeneracy_tol * spec.gamma.l1() * scale) {
                return Err(Error::DegenerateFactor { k, value: v * ck });
            }
            hc_norm.push(v);
        }
        Ok(FundamentalBasis {
            spec,
            grid: grid.clone(),
            hc_norm,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// `st_l^{(q)}(t)` with 1-based node index `l`.
    ///
    /// Written in the displaced argument `τ = t - t_l`, the alias signs follow
    /// `(-1)^{m(I1 - I2)}`, the same pattern as the interpolation factors.
    pub fn eval(&self, l: usize, t: f64, q: usize) -> Result<f64> {
        self.spec.check_order(q, false)?;
        let tl = self.grid.node(l)?;
        let tau = wrap_to_period(wrap_to_period(t)? - tl)?;
        let size = self.grid.len();
        let p = (1 + self.spec.r - q) as i32;
        let plan = TailPlan::for_weights(self.spec.gamma.as_array(), p, size, &self.spec.tail)?;
        let shape = SeriesShape {
            size,
            signs: AliasSigns::new(self.spec.kind, self.spec.r),
            stitch_alt: self.spec.stitch.differs(self.spec.interp),
        };
        let rot = i_pow(q);
        let mut acc = Neumaier::new();
        if q == 0 {
            acc.add(1.0);
        }
        for k in 1..=self.grid.half() {
            let sums = shape.sums(k, tau, p, plan.terms);
            acc.add(2.0 * cos_branch(&self.spec.gamma, &sums, rot) / self.hc_norm[k - 1]);
        }
        Ok(acc.value() / size as f64)
    }

    /// `Σ_l st_l^{(q)}(t)`.
    pub fn sum(&self, t: f64, q: usize) -> Result<f64> {
        let mut acc = Neumaier::new();
        for l in 1..=self.grid.len() {
            acc.add(self.eval(l, t, q)?);
        }
        Ok(acc.value())
    }

    /// `Σ_l f_l st_l(t)`.
    pub fn reconstruct(&self, values: &[f64], t: f64) -> Result<f64> {
        if values.len() != self.grid.len() {
            return Err(Error::LengthMismatch {
                expected: self.grid.len(),
                actual: values.len(),
            });
        }
        let mut acc = Neumaier::new();
        for (l, &f) in values.iter().enumerate() {
            acc.add(f * self.eval(l + 1, t, 0)?);
        }
        Ok(acc.value())
    }

    /// `st_l` as an ordinary spline built from the unit vector `e_l`.
    pub fn as_spline(&self, l: usize) -> Result<TrigSpline> {
        self.grid.node(l)?;
        let mut values = vec![0.0; self.grid.len()];
        values[l - 1] = 1.0;
        TrigSpline::build(&SampleSet::new(self.grid.clone(), values)?, self.spec)
    }
}

/// `st_k^{(q)}(t)` for a spec with `Γ = H`.
pub fn eval_fundamental(spec: &SplineSpec, grid: &UniformGrid, k: usize, t: f64, q: usize) -> Result<f64> {
    FundamentalBasis::new(*spec, grid)?.eval(k, t, q)
}

/// `Σ_k f_k st_k(t)`.
pub fn reconstruct_from_fundamentals(values: &[f64], spec: &SplineSpec, grid: &UniformGrid, t: f64) -> Result<f64> {
    FundamentalBasis::new(*spec, grid)?.reconstruct(values, t)
}

/// Abscissae `t_p = 2πp/points` used by [`TrigSpline::eval_uniform`].
pub fn uniform_points(points: usize) -> Vec<f64> {
    (0..points).map(|p| TAU * p as f64 / points as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn samples(size: usize, ind: Indicator, values: Vec<f64>) -> SampleSet {
        SampleSet::new(UniformGrid::new(size, ind).unwrap(), values).unwrap()
    }

    fn wavy(size: usize, ind: Indicator) -> SampleSet {
        SampleSet::from_fn(UniformGrid::new(size, ind).unwrap(), |t| (t.sin()).exp() + 0.3 * (3.0 * t).cos()).unwrap()
    }

    #[test]
    fn polynomial_params_give_the_trig_polynomial() {
        let s = wavy(9, Indicator::One);
        let spec = SplineSpec::new(
            ParamVector::polynomial(),
            ParamVector::polynomial(),
            FactorKind::Nu3,
            2,
            Indicator::Zero,
            Indicator::One,
        )
        .unwrap();
        let sp = TrigSpline::build(&s, spec).unwrap();
        let c = dft_coeffs(&s);
        for i in 0..50 {
            let t = 0.13 * i as f64;
            assert!((sp.eval(t, 0).unwrap() - c.eval(t).unwrap()).abs() < 1e-13);
            assert!((sp.eval(t, 1).unwrap() - c.eval_deriv(t, 1).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn constants_are_reproduced() {
        for kind in FactorKind::ALL {
            let s = samples(5, Indicator::Zero, vec![0.7; 5]);
            let sp = TrigSpline::build(&s, SplineSpec::simple(kind, 3, Indicator::One, Indicator::Zero).unwrap()).unwrap();
            for t in [0.0, 0.4, 2.2, 5.9] {
                assert!((sp.eval(t, 0).unwrap() - 0.7).abs() < 1e-13);
                assert!(sp.eval(t, 1).unwrap().abs() < 1e-13);
            }
        }
    }

    #[test]
    fn interpolates_unit_vector() {
        let s = samples(3, Indicator::Zero, vec![1.0, 0.0, 0.0]);
        let sp = TrigSpline::build(&s, SplineSpec::simple(FactorKind::Nu1, 3, Indicator::Zero, Indicator::Zero).unwrap()).unwrap();
        for (j, &t) in s.grid().nodes().iter().enumerate() {
            assert!((sp.eval(t, 0).unwrap() - s.values()[j]).abs() < 1e-9);
        }
    }

    #[test]
    fn broken_line_midpoint() {
        let s = samples(3, Indicator::Zero, vec![1.0, 0.0, 0.0]);
        let sp = TrigSpline::build(&s, SplineSpec::simple(FactorKind::Nu1, 1, Indicator::Zero, Indicator::Zero).unwrap()).unwrap();
        let v = sp.eval(PI / 3.0, 0).unwrap();
        assert!((v - 0.5).abs() < 1e-5, "{v}");
    }

    #[test]
    fn order_gate() {
        let s = wavy(5, Indicator::Zero);
        let sp = TrigSpline::build(&s, SplineSpec::simple(FactorKind::Nu1, 2, Indicator::Zero, Indicator::Zero).unwrap()).unwrap();
        assert!(sp.eval(0.3, 1).is_ok());
        assert_eq!(sp.eval(0.3, 2), Err(Error::DerivativeOrderTooHigh { q: 2, r: 2 }));
        let e = sp.eval_report(0.3, 2, true).unwrap();
        assert!(e.relaxed && e.effective_rel_tol.is_infinite());
        assert!(sp.eval_report(0.3, 3, true).is_err());
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let s = wavy(5, Indicator::Zero);
        let spec = SplineSpec::simple(FactorKind::Nu1, 3, Indicator::Zero, Indicator::One).unwrap();
        assert_eq!(
            TrigSpline::build(&s, spec).unwrap_err(),
            Error::GridMismatch { samples: 0, spec: 1 }
        );
    }

    #[test]
    fn uniform_path_matches_pointwise() {
        for (i1, i2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (i1, i2) = (Indicator::new(i1).unwrap(), Indicator::new(i2).unwrap());
            let s = wavy(9, i2);
            let gamma = ParamVector::new(1.0, 0.5, -0.25).unwrap();
            let eta = ParamVector::new(0.8, 1.0, 0.3).unwrap();
            let spec = SplineSpec::simple(FactorKind::Nu4, 4, i1, i2).unwrap().with_params(gamma, eta);
            let sp = TrigSpline::build(&s, spec).unwrap();
            for q in 0..3 {
                let dense = sp.eval_uniform(64, q).unwrap();
                for (p, v) in dense.iter().enumerate() {
                    let t = TAU * p as f64 / 64.0;
                    let direct = sp.eval(t, q).unwrap();
                    assert!((direct - v).abs() < 1e-11 * (1.0 + direct.abs()), "q={q} p={p}: {direct} vs {v}");
                }
            }
        }
    }

    #[test]
    fn fundamental_reduces_to_tm() {
        use crate::trigpoly::eval_tm;
        for ind in [Indicator::Zero, Indicator::One] {
            let grid = UniformGrid::new(7, ind).unwrap();
            let spec = SplineSpec::new(
                ParamVector::polynomial(),
                ParamVector::polynomial(),
                FactorKind::Nu1,
                3,
                Indicator::One,
                ind,
            )
            .unwrap();
            let basis = FundamentalBasis::new(spec, &grid).unwrap();
            for l in 1..=7 {
                for i in 0..20 {
                    let t = 0.31 * i as f64;
                    let a = basis.eval(l, t, 0).unwrap();
                    let b = eval_tm(&grid, l, t).unwrap();
                    assert!((a - b).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn fundamental_kronecker_and_spline_agreement() {
        for (i1, i2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (i1, i2) = (Indicator::new(i1).unwrap(), Indicator::new(i2).unwrap());
            let grid = UniformGrid::new(5, i2).unwrap();
            let g = ParamVector::new(1.0, 0.5, -0.25).unwrap();
            let spec = SplineSpec::simple(FactorKind::Nu1, 3, i1, i2).unwrap().with_params(g, g);
            let basis = FundamentalBasis::new(spec, &grid).unwrap();
            for l in 1..=5 {
                for j in 1..=5 {
                    let v = basis.eval(l, grid.node(j).unwrap(), 0).unwrap();
                    let want = if j == l { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-12, "l={l} j={j} {v}");
                }
                let sp = basis.as_spline(l).unwrap();
                for i in 0..15 {
                    let t = 0.41 * i as f64;
                    for q in 0..3 {
                        let a = basis.eval(l, t, q).unwrap();
                        let b = sp.eval(t, q).unwrap();
                        assert!((a - b).abs() < 1e-10, "I=({i1:?},{i2:?}) l={l} q={q}: {a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn fundamental_requires_equal_params() {
        let grid = UniformGrid::new(5, Indicator::Zero).unwrap();
        let spec = SplineSpec::simple(FactorKind::Nu1, 3, Indicator::Zero, Indicator::Zero)
            .unwrap()
            .with_params(ParamVector::simple(), ParamVector::polynomial());
        assert_eq!(
            eval_fundamental(&spec, &grid, 1, 0.0, 0).unwrap_err(),
            Error::FundamentalRequiresEqualParams
        );
    }

    #[test]
    fn scale_invariance_in_params() {
        let s = wavy(9, Indicator::Zero);
        let g = ParamVector::new(1.0, 0.5, -0.25).unwrap();
        let h = ParamVector::new(0.3, 1.0, 1.0).unwrap();
        let spec = SplineSpec::simple(FactorKind::Nu1, 3, Indicator::Zero, Indicator::Zero).unwrap();
        let a = TrigSpline::build(&s, spec.with_params(g, h)).unwrap();
        let b = TrigSpline::build(&s, spec.with_params(g.scaled(-2.5).unwrap(), h.scaled(4.0).unwrap())).unwrap();
        for i in 0..30 {
            let t = 0.2 * i as f64;
            assert!((a.eval(t, 1).unwrap() - b.eval(t, 1).unwrap()).abs() < 1e-12);
        }
    }
}
