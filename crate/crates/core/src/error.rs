use thiserror::Error;

/// Errors raised by the exact and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Exact division left a nonzero remainder. Inside the mapping
    /// routines this means a polynomial identity has been violated.
    #[error("polynomial division is not exact (remainder {remainder})")]
    NotDivisible { remainder: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The coefficient a_0^(0) = t_0 is not part of the block recurrence.
    #[error("coefficient a_{block}^({offset}) is undefined")]
    UndefinedCoefficient { block: i64, offset: i64 },

    #[error("invalid coefficient sequence: {0}")]
    InvalidSequence(String),

    #[error("Jacobi recurrence coefficient {index} has a vanishing denominator")]
    DegenerateJacobi { index: usize },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("quadrature did not converge (estimate {estimate:e}, error {error:e})")]
    QuadratureNotConverged { estimate: f64, error: f64 },

    #[error("mass M = {value:e} is negative beyond tolerance; inputs are inconsistent")]
    NegativeMass { value: f64 },

    #[error("Stieltjes procedure broke down at index {index}; last stable index {last_stable}")]
    StieltjesBreakdown { index: usize, last_stable: usize },

    #[error("eigenvalue iteration did not converge")]
    EigenNoConvergence,
}

pub type Result<T> = std::result::Result<T, Error>;
