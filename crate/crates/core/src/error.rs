use thiserror::Error;

/// Errors raised by the pair-space routines.
///
/// Indices carried by the variants are zero-based body indices.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least {need} bodies, got {got}")]
    TooFewBodies { need: usize, got: usize },

    #[error("length mismatch: {what} has {got} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("mass {index} is {value}; masses must be positive and finite")]
    InvalidMass { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("indices must be distinct, got {0:?}")]
    RepeatedIndex(Vec<usize>),

    #[error("index {index} out of range for {n} bodies")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("collision between bodies {i} and {j} (separation {distance:e})")]
    Collision { i: usize, j: usize, distance: f64 },

    #[error("pair configuration is not realizable (triangle violation {violation:e})")]
    NotRealizable { violation: f64 },

    #[error("argument {value} outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("no sign change found in [{lo:e}, {hi:e}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        last_iterate: Vec<f64>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
