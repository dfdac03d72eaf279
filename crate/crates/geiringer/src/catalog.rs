//! Exhaustive catalogs of minimally rigid graphs in 3-space.
//!
//! Starting from the tetrahedron, every graph on `n + 1` vertices is obtained
//! from some graph on `n` vertices by an H1 or an H2 step (this is sufficient
//! up to 12 vertices, where a vertex of degree ≤ 4 always exists), so
//! level-by-level application of both steps with canonical-label
//! deduplication enumerates each catalog exactly once. Outputs are stored in
//! canonical form and sorted by label, making catalog files reproducible.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, CanonicalLabel};
use crate::graph::{Graph, GraphError};
use crate::henneberg::{henneberg_h1, henneberg_h2};
use crate::rigidity::Combos;

/// Largest supported catalog level.
pub const MAX_CATALOG_N: usize = 12;

/// All non-isomorphic minimally rigid graphs on `n` vertices (4 ≤ n ≤ 12),
/// in canonical form, sorted by canonical label.
pub fn generate_catalog(n: usize) -> Result<Vec<Graph>, GraphError> {
    if !(4..=MAX_CATALOG_N).contains(&n) {
        return Err(GraphError::InvalidArgument(format!(
            "catalog level must be in 4..={MAX_CATALOG_N}, got {n}"
        )));
    }
    let mut level: BTreeMap<CanonicalLabel, Graph> = BTreeMap::new();
    let k4 = crate::known::k4();
    let (label, _) = canonical_form(&k4);
    level.insert(label, k4);
    for _ in 4..n {
        let mut next: BTreeMap<CanonicalLabel, Graph> = BTreeMap::new();
        for parent in level.values() {
            for child in children(parent)? {
                let (label, perm) = canonical_form(&child);
                next.entry(label).or_insert_with(|| relabel(&child, &perm));
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Every H1 and H2 extension of `g` (all anchor triples; all removed edges
/// with all extra pairs).
fn children(g: &Graph) -> Result<Vec<Graph>, GraphError> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut combos = Combos::new(n);
    combos.reset(3);
    while let Some(idx) = combos.next() {
        out.push(henneberg_h1(g, (idx[0] + 1, idx[1] + 1, idx[2] + 1))?);
    }
    for (u, v) in g.edges() {
        let others: Vec<usize> = (1..=n).filter(|&x| x != u && x != v).collect();
        let mut pairs = Combos::new(others.len());
        pairs.reset(2);
        while let Some(idx) = pairs.next() {
            out.push(henneberg_h2(g, (u, v), (others[idx[0]], others[idx[1]]))?);
        }
    }
    Ok(out)
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut out = Graph::new(g.vertex_count());
    for (a, b) in g.edges() {
        out.add_edge(perm[a], perm[b]).unwrap();
    }
    out
}

/// Formats one catalog record: `label<TAB>edge-list`.
pub fn catalog_record(g: &Graph) -> String {
    let (label, _) = canonical_form(g);
    let edges = g
        .edges()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect::<Vec<_>>()
        .join(",");
    format!("{label}\t{edges}")
}
