//! Convergence factors `ν_k(r)` and the interpolation factors `hc_k`, `hs_k`.
//!
//! Every alias index of harmonic `k` has the form `j = mN ± k`. For all four
//! factor kinds the factor at such an index is exactly
//! `σ · c_k · j^{-(1+r)}`, where `c_k` depends only on `k` and the sign `σ`
//! depends only on the parity of `m`. The alias sums are built on that
//! decomposition, which keeps the sinc argument reduction exact for large `m`.
//!
//! Infinite alias sums are truncated after `M` terms, with `M` taken from the
//! integral remainder bound in [`TailPlan`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::Indicator;
use crate::sum::Neumaier;

pub const DEFAULT_TAIL_REL_TOL: f64 = 1e-12;
pub const DEFAULT_TAIL_MAX_TERMS: usize = 200_000;
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `sinc(πk/N)^{1+r}`
    Nu1,
    /// `|sinc(πk/N)|^{1+r}`
    Nu2,
    /// `k^{-(1+r)}`
    Nu3,
    /// `sign(sin(πk/N)) k^{-(1+r)}`
    Nu4,
}

impl FactorKind {
    pub const ALL: [FactorKind; 4] = [
        FactorKind::Nu1,
        FactorKind::Nu2,
        FactorKind::Nu3,
        FactorKind::Nu4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Nu1 => "nu1",
            FactorKind::Nu2 => "nu2",
            FactorKind::Nu3 => "nu3",
            FactorKind::Nu4 => "nu4",
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FactorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nu1" => Ok(FactorKind::Nu1),
            "nu2" => Ok(FactorKind::Nu2),
            "nu3" => Ok(FactorKind::Nu3),
            "nu4" => Ok(FactorKind::Nu4),
            other => Err(Error::Invalid(format!(
                "unknown factor kind {other:?}; expected nu1, nu2, nu3 or nu4"
            ))),
        }
    }
}

/// One of the parameter vectors `Γ = (γ1, γ2, γ3)` or `H = (η1, η2, η3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamVector {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

impl ParamVector {
    pub fn new(g1: f64, g2: f64, g3: f64) -> Result<Self> {
        for x in [g1, g2, g3] {
            if !x.is_finite() {
                return Err(Error::NonFinite(x));
            }
        }
        if g1 == 0.0 && g2 == 0.0 && g3 == 0.0 {
            return Err(Error::AllZeroParams);
        }
        Ok(ParamVector { g1, g2, g3 })
    }

    /// `(1, 1, 1)`: the simple spline.
    pub fn simple() -> Self {
        ParamVector {
            g1: 1.0,
            g2: 1.0,
            g3: 1.0,
        }
    }

    /// `(1, 0, 0)`: collapses the spline to the interpolation polynomial.
    pub fn polynomial() -> Self {
        ParamVector {
            g1: 1.0,
            g2: 0.0,
            g3: 0.0,
        }
    }

    pub fn scaled(self, c: f64) -> Result<Self> {
        ParamVector::new(c * self.g1, c * self.g2, c * self.g3)
    }

    pub fn l1(&self) -> f64 {
        self.g1.abs() + self.g2.abs() + self.g3.abs()
    }

    pub fn has_aliases(&self) -> bool {
        self.g2 != 0.0 || self.g3 != 0.0
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.g1, self.g2, self.g3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Fail with [`Error::TailBudgetExceeded`] instead of accepting a looser
    /// effective tolerance when `max_terms` cannot reach `rel_tol`.
    pub strict: bool,
}

impl Default for TailControl {
    fn default() -> Self {
        TailControl {
            rel_tol: DEFAULT_TAIL_REL_TOL,
            max_terms: DEFAULT_TAIL_MAX_TERMS,
            strict: false,
        }
    }
}

impl TailControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::Invalid(format!("tail tolerance must be positive, got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Invalid("tail budget must be at least one term".into()));
        }
        Ok(TailControl {
            rel_tol,
            max_terms,
            strict: false,
        })
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }
}

/// Truncation chosen for one alias series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPlan {
    /// Alias terms `m = 1..=terms` kept.
    pub terms: usize,
    /// Certified relative remainder bound at `terms`; infinite when the series
    /// is not absolutely convergent.
    pub effective_rel_tol: f64,
    /// `true` when `max_terms` was hit before the requested tolerance.
    pub relaxed: bool,
}

impl TailPlan {
    /// Plans the truncation of
    /// `Σ_m [w2 (mN+k)^{-p} + w3 (mN-k)^{-p}]` against the leading scale
    /// `w1 k^{-p} + w2 (N+k)^{-p} + w3 (N-k)^{-p}`, for every `k = 1..=half`.
    ///
    /// The remainder after `M` terms is bounded by
    /// `(w2 + w3) (MN - k)^{1-p} / (N (p - 1))`.
    pub fn for_weights(weights: [f64; 3], p: i32, size: usize, control: &TailControl) -> Result<Self> {
        let [w1, w2, w3] = weights.map(f64::abs);
        if w2 == 0.0 && w3 == 0.0 {
            return Ok(TailPlan {
                terms: 0,
                effective_rel_tol: 0.0,
                relaxed: false,
            });
        }
        let nf = size as f64;
        let half = (size - 1) / 2;
        if p <= 1 {
            if control.strict {
                return Err(Error::TailBudgetExceeded {
                    needed: f64::INFINITY,
                    max_terms: control.max_terms,
                });
            }
            return Ok(TailPlan {
                terms: control.max_terms,
                effective_rel_tol: f64::INFINITY,
                relaxed: true,
            });
        }
        let pf = f64::from(p);
        let mut needed: f64 = 1.0;
        for k in 1..=half {
            let kf = k as f64;
            let lead = w1 * kf.powf(-pf) + w2 * (nf + kf).powf(-pf) + w3 * (nf - kf).powf(-pf);
            let x = (w2 + w3) / (nf * (pf - 1.0) * control.rel_tol * lead);
            let m = (kf + x.powf(1.0 / (pf - 1.0))) / nf;
            needed = needed.max(m.ceil());
        }
        if needed <= control.max_terms as f64 {
            let terms = needed as usize;
            return Ok(TailPlan {
                terms,
                effective_rel_tol: relative_bound([w1, w2, w3], p, size, terms),
                relaxed: false,
            });
        }
        if control.strict {
            return Err(Error::TailBudgetExceeded {
                needed,
                max_terms: control.max_terms,
            });
        }
        Ok(TailPlan {
            terms: control.max_terms,
            effective_rel_tol: relative_bound([w1, w2, w3], p, size, control.max_terms),
            relaxed: true,
        })
    }

    /// Plan covering two series: the larger term count wins.
    pub fn combine(self, other: TailPlan) -> TailPlan {
        TailPlan {
            terms: self.terms.max(other.terms),
            effective_rel_tol: self.effective_rel_tol.max(other.effective_rel_tol),
            relaxed: self.relaxed || other.relaxed,
        }
    }
}

fn relative_bound(weights: [f64; 3], p: i32, size: usize, terms: usize) -> f64 {
    let [w1, w2, w3] = weights;
    let nf = size as f64;
    let pf = f64::from(p);
    let mf = terms as f64;
    (1..=(size - 1) / 2)
        .map(|k| {
            let kf = k as f64;
            let lead = w1 * kf.powf(-pf) + w2 * (nf + kf).powf(-pf) + w3 * (nf - kf).powf(-pf);
            (w2 + w3) * (mf * nf - kf).powf(1.0 - pf) / (nf * (pf - 1.0)) / lead
        })
        .fold(0.0, f64::max)
}

/// Alias terms needed by the simple spline `Γ = (1,1,1)` of order `r` to reach
/// `rel_tol`; errors when that exceeds `max_terms`.
pub fn tail_length(r: usize, size: usize, rel_tol: f64, max_terms: usize) -> Result<usize> {
    let control = TailControl::new(rel_tol, max_terms)?.strict();
    TailPlan::for_weights([1.0; 3], 1 + r as i32, size, &control).map(|p| p.terms)
}

/// Convergence factor `ν_j(r)` for grid size `size`, straight from its formula.
pub fn nu(kind: FactorKind, j: usize, r: usize, size: usize) -> f64 {
    assert!(j >= 1, "convergence factors are indexed from 1");
    let e = 1 + r as i32;
    match kind {
        FactorKind::Nu1 | FactorKind::Nu2 => {
            let x = PI * j as f64 / size as f64;
            let sinc = reduced_sin(j, size) / x;
            if kind == FactorKind::Nu1 {
                sinc.powi(e)
            } else {
                sinc.abs().powi(e)
            }
        }
        FactorKind::Nu3 => (j as f64).powi(-e),
        FactorKind::Nu4 => {
            let s = reduced_sin(j, size);
            let sign = if s > 0.0 {
                1.0
            } else if s < 0.0 {
                -1.0
            } else {
                0.0
            };
            sign * (j as f64).powi(-e)
        }
    }
}

/// `sin(π j / N)` with the argument reduced in integers.
fn reduced_sin(j: usize, size: usize) -> f64 {
    let rem = j % (2 * size);
    if rem == 0 || rem == size {
        return 0.0;
    }
    (PI * rem as f64 / size as f64).sin()
}

/// Sign pattern of `ν_{mN±k}(r)`: `sign · alt^m` on each branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct AliasSigns {
    pub plus_negative: bool,
    pub plus_alternates: bool,
    pub minus_negative: bool,
    pub minus_alternates: bool,
}

impl AliasSigns {
    pub fn new(kind: FactorKind, r: usize) -> Self {
        // sin(π(mN+k)/N) = (-1)^m sin(πk/N), sin(π(mN-k)/N) = -(-1)^m sin(πk/N)
        let odd_power = (1 + r) % 2 == 1;
        match kind {
            FactorKind::Nu2 | FactorKind::Nu3 => AliasSigns {
                plus_negative: false,
                plus_alternates: false,
                minus_negative: false,
                minus_alternates: false,
            },
            FactorKind::Nu1 => AliasSigns {
                plus_negative: false,
                plus_alternates: odd_power,
                minus_negative: odd_power,
                minus_alternates: odd_power,
            },
            FactorKind::Nu4 => AliasSigns {
                plus_negative: false,
                plus_alternates: true,
                minus_negative: true,
                minus_alternates: true,
            },
        }
    }

    #[inline]
    pub fn plus(&self, m: usize) -> f64 {
        branch_sign(self.plus_negative, self.plus_alternates, m)
    }

    #[inline]
    pub fn minus(&self, m: usize) -> f64 {
        branch_sign(self.minus_negative, self.minus_alternates, m)
    }
}

#[inline]
fn branch_sign(negative: bool, alternates: bool, m: usize) -> f64 {
    let flip = negative ^ (alternates && m % 2 == 1);
    if flip {
        -1.0
    } else {
        1.0
    }
}

/// `c_k` in `|ν_{mN±k}(r)| = c_k (mN±k)^{-(1+r)}`.
pub(crate) fn envelope(kind: FactorKind, k: usize, r: usize, size: usize) -> f64 {
    match kind {
        FactorKind::Nu1 | FactorKind::Nu2 => {
            (size as f64 * reduced_sin(k, size).abs() / PI).powi(1 + r as i32)
        }
        FactorKind::Nu3 | FactorKind::Nu4 => 1.0,
    }
}

/// Everything about a spline that the factor sums depend on, apart from the
/// parameter vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorSetup {
    pub kind: FactorKind,
    pub r: usize,
    pub size: usize,
    /// `I1`, the stitching grid.
    pub stitch: Indicator,
    /// `I2`, the interpolation grid.
    pub interp: Indicator,
}

impl FactorSetup {
    pub fn new(kind: FactorKind, r: usize, size: usize, stitch: Indicator, interp: Indicator) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("spline order r must be at least 1".into()));
        }
        if size < 3 {
            return Err(Error::TooSmall(size));
        }
        if size % 2 == 0 {
            return Err(Error::EvenN(size));
        }
        Ok(FactorSetup {
            kind,
            r,
            size,
            stitch,
            interp,
        })
    }

    pub fn half(&self) -> usize {
        (self.size - 1) / 2
    }
}

/// An interpolation factor together with the truncation used for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorValue {
    pub value: f64,
    pub plan: TailPlan,
}

/// `p1 ν_k + Σ_m (-1)^{m(I1-I2)} [p2 ν_{mN+k} + p3 ν_{mN-k}]`.
///
/// This is `hc_k` for `params = Γ` and `hs_k` for `params = H`.
pub fn interpolation_factor(
    params: &ParamVector,
    setup: &FactorSetup,
    k: usize,
    tail: &TailControl,
    degeneracy_tol: f64,
) -> Result<FactorValue> {
    if k == 0 || k > setup.half() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: setup.half(),
        });
    }
    let e = 1 + setup.r as i32;
    let plan = TailPlan::for_weights(params.as_array(), e, setup.size, tail)?;
    let value = normalized_factor(params, setup, k, plan.terms) * envelope(setup.kind, k, setup.r, setup.size);
    let nf = setup.size as f64;
    let kf = k as f64;
    let scale = envelope(setup.kind, k, setup.r, setup.size) * kf.powi(-e).max((nf - kf).powi(-e));
    if !(value.abs() >= degeneracy_tol * params.l1() * scale) {
        return Err(Error::DegenerateFactor { k, value });
    }
    Ok(FactorValue { value, plan })
}

/// The factor sum divided by `c_k`, truncated after `terms` alias terms.
pub(crate) fn normalized_factor(params: &ParamVector, setup: &FactorSetup, k: usize, terms: usize) -> f64 {
    let e = 1 + setup.r as i32;
    let signs = AliasSigns::new(setup.kind, setup.r);
    let stitch_alt = setup.stitch.differs(setup.interp);
    let nf = setup.size as f64;
    let kf = k as f64;
    let mut acc = Neumaier::new();
    acc.add(params.g1 * kf.powi(-e));
    if params.has_aliases() {
        for m in 1..=terms {
            let s = if stitch_alt && m % 2 == 1 { -1.0 } else { 1.0 };
            let mf = m as f64;
            acc.add(s * params.g2 * signs.plus(m) * (mf * nf + kf).powi(-e));
            acc.add(s * params.g3 * signs.minus(m) * (mf * nf - kf).powi(-e));
        }
    }
    acc.value()
}

/// `hc_k(Γ)` with the default degeneracy threshold.
pub fn hc(gamma: &ParamVector, setup: &FactorSetup, k: usize, tail: &TailControl) -> Result<f64> {
    interpolation_factor(gamma, setup, k, tail, DEFAULT_DEGENERACY_TOL).map(|f| f.value)
}

/// `hs_k(H)`; the same sum as [`hc`] with `η` weights.
pub fn hs(eta: &ParamVector, setup: &FactorSetup, k: usize, tail: &TailControl) -> Result<f64> {
    interpolation_factor(eta, setup, k, tail, DEFAULT_DEGENERACY_TOL).map(|f| f.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(kind: FactorKind, r: usize, size: usize, i1: u8, i2: u8) -> FactorSetup {
        FactorSetup::new(
            kind,
            r,
            size,
            Indicator::new(i1).unwrap(),
            Indicator::new(i2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn factor_formula_examples() {
        assert_eq!(nu(FactorKind::Nu3, 2, 1, 7), 0.25);
        let want = 27.0 / (4.0 * PI * PI);
        assert!((nu(FactorKind::Nu1, 1, 1, 3) - want).abs() < 1e-15);
        assert!((want - 0.683917).abs() < 1e-6);
        assert_eq!(nu(FactorKind::Nu4, 4, 1, 3), -1.0 / 16.0);
        assert_eq!(nu(FactorKind::Nu1, 3, 2, 3), 0.0);
    }

    #[test]
    fn alias_decomposition_matches_formula() {
        for kind in FactorKind::ALL {
            for r in 1..=6 {
                for size in [3usize, 5, 9] {
                    let signs = AliasSigns::new(kind, r);
                    for k in 1..=(size - 1) / 2 {
                        let c = envelope(kind, k, r, size);
                        let base = nu(kind, k, r, size);
                        assert!((base - c * (k as f64).powi(-(1 + r as i32))).abs() <= 1e-14 * base.abs());
                        for m in 1..40 {
                            for (j, sign) in [(m * size + k, signs.plus(m)), (m * size - k, signs.minus(m))] {
                                let direct = nu(kind, j, r, size);
                                let split = sign * c * (j as f64).powi(-(1 + r as i32));
                                assert!(
                                    (direct - split).abs() <= 1e-12 * direct.abs(),
                                    "{kind} r={r} N={size} k={k} m={m}: {direct} vs {split}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decay_envelope_holds() {
        for kind in FactorKind::ALL {
            for r in [1usize, 2, 3, 5] {
                for size in [3usize, 9, 17] {
                    let c = 1f64.max((size as f64 / PI).powi(1 + r as i32));
                    for j in 1..=10_000usize {
                        let bound = c * (j as f64).powi(-(1 + r as i32));
                        assert!(nu(kind, j, r, size).abs() <= bound * (1.0 + 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn absolute_value_pairs() {
        // sign(0) = 0 for ν4 at multiples of N, which never occur as alias indices
        for j in (1..500).filter(|j| j % 9 != 0) {
            for r in 1..4 {
                assert_eq!(nu(FactorKind::Nu2, j, r, 9), nu(FactorKind::Nu1, j, r, 9).abs());
                assert_eq!(nu(FactorKind::Nu3, j, r, 9), nu(FactorKind::Nu4, j, r, 9).abs());
            }
        }
    }

    #[test]
    fn polynomial_params_have_no_tail() {
        let tail = TailControl::default();
        for kind in FactorKind::ALL {
            let s = setup(kind, 2, 7, 0, 1);
            for k in 1..=3 {
                let v = hc(&ParamVector::polynomial(), &s, k, &tail).unwrap();
                let want = nu(kind, k, 2, 7);
                assert!((v - want).abs() <= 1e-15 * want.abs());
            }
        }
    }

    #[test]
    fn zeta_identity_for_simple_nu3() {
        // Σ_{j ≢ 0 mod 3} 1/j² = (π²/6)(1 - 1/9)
        let want = 4.0 * PI * PI / 27.0;
        let tail = TailControl::new(1e-12, 2_000_000).unwrap();
        let s = setup(FactorKind::Nu3, 1, 3, 0, 0);
        let got = hc(&ParamVector::simple(), &s, 1, &tail).unwrap();
        // truncation remainder ≈ 2/(9M)
        assert!((got - want).abs() < 2e-7, "{got} vs {want}");
        assert!((want - 1.4621636).abs() < 1e-7);
        let got = hs(&ParamVector::simple(), &s, 1, &tail).unwrap();
        assert!((got - want).abs() < 2e-7);
    }

    #[test]
    fn simple_nu1_r1_normalizes_to_one() {
        let s = setup(FactorKind::Nu1, 1, 3, 0, 0);
        let tail = TailControl::new(1e-12, 2_000_000).unwrap();
        let got = hc(&ParamVector::simple(), &s, 1, &tail).unwrap();
        assert!((got - 1.0).abs() < 1e-6, "{got}");
    }

    #[test]
    fn minus_branch_only() {
        // Σ_m (3m-1)^{-4}, summed backwards to 10^6 terms as the oracle
        let oracle: f64 = (1..=1_000_000u64).rev().map(|m| ((3 * m - 1) as f64).powi(-4)).sum();
        assert!((oracle - 0.0644678).abs() < 1e-7);
        let s = setup(FactorKind::Nu3, 3, 3, 0, 0);
        let eta = ParamVector::new(0.0, 0.0, 1.0).unwrap();
        let got = hs(&eta, &s, 1, &TailControl::default()).unwrap();
        assert!((got - oracle).abs() < 1e-12 * oracle, "{got} vs {oracle}");
    }

    #[test]
    fn sign_depends_on_indicator_parity() {
        let tail = TailControl::default();
        let gamma = ParamVector::new(1.0, 0.5, -0.25).unwrap();
        for kind in FactorKind::ALL {
            for (a, b) in [((0, 0), (1, 1)), ((0, 1), (1, 0))] {
                let x = hc(&gamma, &setup(kind, 3, 9, a.0, a.1), 2, &tail).unwrap();
                let y = hc(&gamma, &setup(kind, 3, 9, b.0, b.1), 2, &tail).unwrap();
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn doubling_terms_stays_inside_certificate() {
        let tail = TailControl::new(1e-10, DEFAULT_TAIL_MAX_TERMS).unwrap();
        for kind in FactorKind::ALL {
            for r in [2usize, 3, 5] {
                let s = setup(kind, r, 9, 0, 1);
                for k in 1..=4 {
                    let f = interpolation_factor(&ParamVector::simple(), &s, k, &tail, DEFAULT_DEGENERACY_TOL).unwrap();
                    assert!(!f.plan.relaxed);
                    let doubled = normalized_factor(&ParamVector::simple(), &s, k, 2 * f.plan.terms)
                        * envelope(kind, k, r, 9);
                    assert!((doubled - f.value).abs() <= 2.0 * tail.rel_tol * f.value.abs());
                }
            }
        }
    }

    #[test]
    fn tail_length_examples() {
        let m = tail_length(7, 9, 1e-12, DEFAULT_TAIL_MAX_TERMS).unwrap();
        assert!(m <= 100, "{m}");
        assert!(matches!(
            tail_length(1, 3, 1e-12, DEFAULT_TAIL_MAX_TERMS),
            Err(Error::TailBudgetExceeded { .. })
        ));
        for size in [3usize, 5, 9, 17] {
            let lens: Vec<usize> = (2..30)
                .map(|r| tail_length(r, size, 1e-12, usize::MAX).unwrap())
                .collect();
            assert!(lens.windows(2).all(|w| w[1] <= w[0]), "N={size}: {lens:?}");
        }
    }

    #[test]
    fn relaxed_plan_reports_its_tolerance() {
        let plan = TailPlan::for_weights([1.0; 3], 2, 3, &TailControl::default()).unwrap();
        assert!(plan.relaxed);
        assert_eq!(plan.terms, DEFAULT_TAIL_MAX_TERMS);
        assert!(plan.effective_rel_tol > 1e-12 && plan.effective_rel_tol < 1e-5);
        let strict = TailControl::default().strict();
        assert!(TailPlan::for_weights([1.0; 3], 2, 3, &strict).is_err());
    }

    #[test]
    fn degenerate_and_invalid_params() {
        assert_eq!(ParamVector::new(0.0, 0.0, 0.0), Err(Error::AllZeroParams));
        // γ1 ν_1 + γ2 Σ ... tuned to cancel: pick γ1 so that hc = 0
        let s = setup(FactorKind::Nu3, 3, 3, 0, 0);
        let tail = TailControl::default();
        let alias_only = hc(&ParamVector::new(0.0, 1.0, 1.0).unwrap(), &s, 1, &tail).unwrap();
        let cancel = ParamVector::new(-alias_only, 1.0, 1.0).unwrap();
        assert!(matches!(hc(&cancel, &s, 1, &tail), Err(Error::DegenerateFactor { k: 1, .. })));
        assert!(hc(&ParamVector::simple(), &s, 2, &tail).is_err());
        assert!("nu5".parse::<FactorKind>().is_err());
        assert_eq!("NU3".parse::<FactorKind>().unwrap(), FactorKind::Nu3);
    }
}
