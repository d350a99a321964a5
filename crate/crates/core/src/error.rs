use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NonConvergence { sweeps: usize, off_norm: f64 },

    #[error("value {value} lies outside the domain {domain} of {function}")]
    DomainViolation {
        function: String,
        domain: String,
        value: f64,
    },

    #[error("degenerate interval: {lo} == {hi}")]
    DegenerateInterval { lo: f64, hi: f64 },

    #[error("bounds must satisfy 0 < m < M, got m = {m}, M = {big_m}")]
    InvalidBounds { m: f64, big_m: f64 },

    #[error("operator is not strictly positive (smallest eigenvalue {min_eig:e}, threshold {threshold:e})")]
    NotStrictlyPositive { min_eig: f64, threshold: f64 },

    #[error("quadrature refinement changed the result by {delta:e} (limit {limit:e})")]
    QuadratureNotConverged { delta: f64, limit: f64 },

    #[error("weight {v} outside the admissible range {range}")]
    WeightOutOfRange { v: f64, range: &'static str },

    #[error("{function} is not strictly positive on [{m}, {big_m}] (sampled minimum {min_value})")]
    NonPositiveFunction {
        function: String,
        m: f64,
        big_m: f64,
        min_value: f64,
    },

    #[error("spectrum [{lo}, {hi}] of operator {index} is not contained in [{m}, {big_m}]")]
    SpectraOutOfBounds {
        index: usize,
        lo: f64,
        hi: f64,
        m: f64,
        big_m: f64,
    },

    #[error("weights must be positive and sum to 1 (sum = {sum})")]
    WeightsNotNormalized { sum: f64 },

    #[error("{function} lacks the required flag: {flag}")]
    FlagMissing {
        function: String,
        flag: &'static str,
    },

    #[error("hypothesis {condition} failed (margin {margin:e})")]
    HypothesisFailed { condition: String, margin: f64 },

    #[error("{function} must satisfy {requirement}")]
    ZeroValueViolation {
        function: String,
        requirement: &'static str,
    },

    #[error("vector norm {norm} differs from 1")]
    NotUnitVector { norm: f64 },

    #[error("no interval placement exists: {0}")]
    InfeasibleConstruction(String),

    #[error("unknown checker `{0}`")]
    UnknownChecker(String),

    #[error("unknown condition `{0}`")]
    UnknownCondition(String),

    #[error("invalid function spec: {0}")]
    InvalidFunctionSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Errors caused by numerics rather than by the caller's input.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::QuadratureNotConverged { .. }
        )
    }
}
