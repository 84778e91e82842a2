use thiserror::Error;

/// Errors produced while building or evaluating splines and their oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {0} is even; interpolation grids need an odd node count")]
    EvenN(usize),
    #[error("grid size {0} is too small; at least 3 nodes are required")]
    TooSmall(usize),
    #[error("indicator must be 0 or 1, got {0}")]
    InvalidIndicator(u8),
    #[error("non-finite input value {0}")]
    NonFinite(f64),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("parameter vector has all three components equal to zero")]
    AllZeroParams,
    #[error("interpolation factor for harmonic {k} is degenerate ({value:e})")]
    DegenerateFactor { k: usize, value: f64 },
    #[error("alias tail needs {needed} terms but the budget is {max_terms}")]
    TailBudgetExceeded { needed: f64, max_terms: usize },
    #[error("derivative order {q} is not allowed for a spline of order {r}")]
    DerivativeOrderTooHigh { q: usize, r: usize },
    #[error("samples live on grid I={samples} but the spline interpolates on I={spec}")]
    GridMismatch { samples: u8, spec: u8 },
    #[error("fundamental splines exist only when gamma equals eta")]
    FundamentalRequiresEqualParams,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("Simpson's rule needs an even panel count >= 2, got {0}")]
    OddPanels(usize),
    #[error("convergence fit needs at least 3 grid sizes, got {0}")]
    DegenerateFit(usize),
    #[error("grid sizes must be odd and strictly increasing")]
    InvalidGridSequence,
    #[error("no pair of fundamental splines has an inner product above {threshold:e}")]
    NoWitnessFound { threshold: f64 },
    #[error("parameter vector (g, 0, 0) gives orthogonal fundamentals; no witness exists")]
    OrthogonalBasis,
    #[error("no polynomial baseline is available for spline order {0}")]
    UnsupportedBaseline(usize),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Errors that arise from the numerics rather than from malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateFactor { .. }
                | Error::TailBudgetExceeded { .. }
                | Error::SingularSystem
                | Error::NoWitnessFound { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}
