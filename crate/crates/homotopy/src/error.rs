use thiserror::Error;

/// Errors from solving, counting, and realization.
#[derive(Debug, Error)]
pub enum SolverError {
    /// Persistent path failures across retries with fresh homotopy constants.
    #[error("solver failure: {0}")]
    SolverFailure(String),

    /// The requested computation needs data the instance cannot provide
    /// (e.g. no triangle, no square subsystem).
    #[error("not found: {0}")]
    NotFound(String),

    /// Input lengths are infeasible for the requested construction.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The given distance data does not belong to a spatial point set.
    #[error("not embeddable: {0}")]
    NotEmbeddable(String),

    /// Malformed request independent of the numeric data.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    System(#[from] distance_systems::SystemError),

    #[error(transparent)]
    Graph(#[from] geiringer::GraphError),
}
