//! Polynomial formulations of the Euclidean embedding problem.
//!
//! Given a minimally rigid spatial graph and a length for each edge, the
//! embeddings (up to direct isometry) are the solutions of a square
//! polynomial system. This crate builds two such formulations and the exact
//! machinery to reason about their root counts:
//!
//! * [`sphere`] — coordinate equations. A triangle of the graph is pinned in
//!   normalized position, every remaining vertex gets coordinates plus a
//!   squared-magnitude variable, and each edge contributes a bilinear
//!   equation. Counts from this system come in pairs swapped by `z ↦ −z`.
//! * [`cm`] — distance equations. Unknown distances are entries of the
//!   bordered squared-distance matrix, whose rank condition in R³ makes all
//!   bordered 6×6 minors vanish; a square subsystem is selected among the
//!   minors covering the chosen unknowns. Solutions are filtered by the
//!   triangular/tetrangular sign inequalities and completed to full distance
//!   sets before they certify an embedding.
//! * [`polytope`] — Newton polytopes and exact mixed volumes, the sparse
//!   root bound used to compare the two formulations.
//! * [`lengths`] — edge-length assignments: generic perturbed instances and
//!   the published certificate instances with many real embeddings.
//!
//! Everything downstream of floating-point length data is explicit about its
//! tolerances; the combinatorial layers (supports, minors, volumes) are
//! exact.

pub mod cm;
pub mod error;
pub mod lengths;
pub mod poly;
pub mod polytope;
pub mod sphere;

pub use cm::{
    build_cm_matrix, candidate_minors, cm_subsystem, cm_subsystem_minors, complete_distances, select_cm_variables,
    evaluate_inequalities, single_variable_inequalities, CmEntry, CmMatrix, InequalityReport,
};
pub use error::SystemError;
pub use lengths::{
    g128_lengths, g160_lengths, g16a_lengths, g16b_lengths, g24_lengths, g32a_lengths,
    g32b_lengths, g48_lengths_28, g48_lengths_32, g48_lengths_48, generic_lengths,
    induced_lengths, LengthAssignment,
};
pub use poly::{Formulation, Polynomial, PolynomialSystem};
pub use polytope::{mixed_volume, newton_polytopes, reduce_to_convex_position, NewtonPolytope};
pub use sphere::{build_sphere_system, fixed_triangle_coordinates, TriangleFrame};
