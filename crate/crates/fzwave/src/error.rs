//! Error type shared by all evaluators.

use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Model or configuration parameter outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Point on the branch segment of `l_1`.
    #[error("point lies on the branch cut [-1/tau, -1]: {0}")]
    BranchCut(String),
    /// Query outside the region where the chosen representation is valid.
    #[error("representation not valid here: {0}")]
    Region(String),
    /// `(x, t) = (0, 0)`, where `S` is discontinuous.
    #[error("S is singular at the origin (x, t) = (0, 0)")]
    SingularPoint,
    /// Adaptive quadrature ran out of subdivisions; carries the best estimate.
    #[error(
        "quadrature did not converge: best value {re}{im:+}i, error estimate {error_estimate:e}, {nodes_used} nodes"
    )]
    NonConvergence {
        re: f64,
        im: f64,
        error_estimate: f64,
        nodes_used: usize,
    },
    /// The envelope bound of an infinite tail never dropped below tolerance.
    #[error("tail truncation failed: {0}")]
    Truncation(String),
    /// Root bracketing or refinement failed.
    #[error("root finding failed: {0}")]
    Root(String),
    /// `λ = 1` was passed to the ray asymptotics.
    #[error("lambda = 1 is the packet centre; no ray asymptote there")]
    InvalidRay,
    /// Initial data with vanishing mean in a check that needs `∫u₀ ≠ 0`.
    #[error("degenerate initial data: {0}")]
    DegenerateData(String),
}

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;
