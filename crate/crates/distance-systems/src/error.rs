//! Error taxonomy shared by the formulation builders.

use thiserror::Error;

/// Errors raised while assembling or analyzing polynomial formulations.
#[derive(Debug, Error)]
pub enum SystemError {
    /// The three base lengths cannot form a triangle (strict violation; the
    /// collinear boundary is accepted with a degeneracy flag instead).
    #[error("triangle inequality violated for base lengths ({d12}, {d13}, {d23})")]
    InfeasibleTriangle { d12: f64, d13: f64, d23: f64 },

    /// A caller-supplied argument contradicts the graph or the length data.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// No square minor selection covering the requested variables exists.
    #[error("no square subsystem found: {0}")]
    NoSubsystem(String),

    /// A pairwise distance required by the computation was not supplied.
    #[error("missing distance for vertex pair ({0}, {1})")]
    MissingDistance(usize, usize),

    /// Mixed volumes are only computed up to ambient dimension 4.
    #[error("mixed volume unsupported in ambient dimension {0} (limit 4)")]
    UnsupportedDimension(usize),

    /// Underlying graph-operation failure.
    #[error(transparent)]
    Graph(#[from] geiringer::GraphError),
}
