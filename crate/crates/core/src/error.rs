use thiserror::Error;

use crate::circuit::ParseError;

/// Errors produced by the simulator and the analysis procedures built on it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{n} qubits exceeds the configured cap of {cap}")]
    QubitCap { n: usize, cap: usize },

    #[error("polarization must lie in [0, 1], got {0}")]
    InvalidPolarization(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("probabilities sum to {sum}, which is off by more than 1e-9")]
    Normalization { sum: f64 },

    #[error("the uniform-approximation bound eps/(1-eps) is undefined at eps = 1")]
    BoundUndefined,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("acceptance probability {acceptance} satisfies neither promise at r = {r}")]
    NoPromise { acceptance: f64, r: u32 },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
