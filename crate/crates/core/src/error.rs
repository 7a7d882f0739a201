use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid gas model: {0}")]
    InvalidGas(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inadmissible density ratio {beta}: must lie in [{lower}, {upper}]")]
    Admissibility { beta: f64, lower: f64, upper: f64 },

    #[error("angle {0} rad outside (0, pi/2)")]
    Angle(f64),

    #[error("no regular reflection: tan^2(phi_i) = {tan_sq_phi_i} below threshold {threshold}")]
    Detachment { tan_sq_phi_i: f64, threshold: f64 },

    #[error("singularity: {0}")]
    Singular(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("root solvers disagree: cardano {cardano}, bisection {bisection}")]
    RootMismatch { cardano: f64, bisection: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("point lies in {found}, expected {expected}")]
    Region { found: String, expected: String },

    #[error("front classification: {0}")]
    Classification(String),

    #[error("finite-difference stencil leaves the domain: {0}")]
    Stencil(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
