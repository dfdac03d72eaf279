//! Polynomial homotopy continuation for embedding counts.
//!
//! The crate turns the polynomial systems of `distance-systems` into
//! counted solution sets:
//!
//! * [`solve_total_degree`] tracks all Bézout paths from the standard
//!   `xᵢ^{dᵢ} = 1` start system with a random homotopy constant, then
//!   refines, dedupes, classifies (real/nonreal), and orders the endpoints
//!   deterministically.
//! * [`track_parameter_homotopy`] carries a solved instance's roots to a
//!   nearby instance with the same support along a complex arc, the cheap
//!   route when many length assignments of one graph are processed.
//! * [`count_embeddings`] packages either formulation into complex/real
//!   embedding counts, applying the reflection doubling and the
//!   embeddability filter on the determinantal side.
//! * [`realize_from_distances`] inverts a complete distance matrix into
//!   spatial coordinates by classical scaling, rejecting data that needs
//!   more than three dimensions.
//!
//! Tracking is a fourth-order Runge–Kutta predictor on the Davidenko
//! equation with Newton correction and adaptive steps; the tolerances
//! (minimum step 10⁻¹⁴, divergence at |x| > 10⁸, realness at |Im| ≤ 10⁻⁶,
//! dedupe at 10⁻⁸ relative) live next to the code that applies them.

mod compiled;
mod count;
mod error;
mod realize;
mod solve;
mod track;

pub use compiled::CompiledSystem;
pub use count::{
    count_embeddings, default_triangle, min_mixed_volume_over_triangles, EmbeddingCounts,
    FormulationKind,
};
pub use error::SolverError;
pub use realize::realize_from_distances;
pub use solve::{
    refine, solve_total_degree, track_parameter_homotopy, Provenance, Solution, SolutionSet,
    DEDUPE_TOL, NEAR_REAL_TOL, REAL_TOL,
};
pub use track::{newton_refine, PathOutcome, Schedule, TrackSettings, Tracker};
