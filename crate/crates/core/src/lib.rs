//! Interpolation trigonometric splines on odd uniform grids.
//!
//! A spline `St^(I1,I2)(Γ, H, ν, r, t)` is a uniformly convergent
//! trigonometric series: the interpolation polynomial of the data on grid
//! `I2`, with every harmonic spread over its alias frequencies by convergence
//! factors `ν` and renormalized by interpolation factors so the data are still
//! interpolated. With `Γ = H = (1,1,1)`, `ν1` and odd `r` the spline coincides
//! with the periodic polynomial spline of degree `r`; [`polyoracle`] provides
//! those classical splines independently for comparison.

pub mod analysis;
pub mod error;
pub mod factors;
pub mod grid;
pub mod polyoracle;
pub mod power;
pub mod spline;
pub mod sum;
pub mod trigpoly;

pub use error::{Error, Result};
pub use factors::{FactorKind, FactorSetup, ParamVector, TailControl, TailPlan};
pub use grid::{wrap_to_period, Indicator, UniformGrid};
pub use polyoracle::PeriodicPolySpline;
pub use power::PowerReport;
pub use spline::{Evaluation, FundamentalBasis, SplineSpec, TrigSpline};
pub use trigpoly::{FourierCoeffs, SampleSet};
