//! Minimally rigid graphs in 3-space ("Geiringer graphs") and the
//! combinatorial machinery around them: Henneberg construction steps,
//! exhaustive catalogs with canonical-label deduplication, randomized
//! rigidity and global-rigidity tests, and the five-vertex sampling
//! subgraphs consumed by the coupler-curve machinery.
//!
//! A graph on `n ≥ 3` vertices is minimally rigid in 3-space when every
//! generic realization admits only finitely many others with the same edge
//! lengths and no edge can be removed without losing that property; such
//! graphs have exactly `3n − 6` edges. The edge count alone is not
//! sufficient (see [`known::double_banana`]), which is why rank-based tests
//! back every construction here.

pub mod canon;
pub mod catalog;
pub mod graph;
pub mod henneberg;
pub mod known;
pub mod rigidity;
pub mod subgraphs;

pub use canon::{canonical_form, canonical_graph, canonical_label, CanonicalLabel};
pub use catalog::{catalog_record, generate_catalog, MAX_CATALOG_N};
pub use graph::{Graph, GraphError};
pub use henneberg::{
    classify_last_step, henneberg_h1, henneberg_h2, henneberg_h3, H3Variant, LastStep,
};
pub use rigidity::{
    find_global_extension, is_generically_rigid, is_globally_rigid, random_realization,
    rigidity_matrix, Combos,
};
pub use subgraphs::{suitable_subgraphs, SamplingSubgraph};
