//! Henneberg extension steps for minimally rigid graphs in 3-space.
//!
//! Each step adds one vertex and leaves the edge count at `3n − 6`:
//!
//! * **H1** joins a new degree-3 vertex to three existing vertices.
//! * **H2** deletes one edge `uv` and joins a new degree-4 vertex to `u`, `v`
//!   and two further vertices.
//! * **H3x / H3v** delete two edges and join a new degree-5 vertex to five
//!   vertices: for the X-replacement the deleted edges are disjoint and the
//!   new vertex takes their four endpoints plus one more; for the double-V
//!   replacement the deleted edges share one vertex and the new vertex takes
//!   the three endpoints plus two more. H1 and H2 alone already reach every
//!   minimally rigid graph with at most 12 vertices, so the H3 variants are
//!   not used for catalog generation.

use crate::graph::{Graph, GraphError};

/// The two H3 variants: X-replacement (disjoint deleted edges) and double-V
/// replacement (deleted edges sharing a vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H3Variant {
    X,
    V,
}

/// Classification of how a graph can have been produced: an inverse H1 exists
/// exactly when some vertex has degree 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastStep {
    H1Capable,
    H2Required,
}

impl LastStep {
    /// Short tag used in catalog and classification files.
    pub fn tag(self) -> &'static str {
        match self {
            LastStep::H1Capable => "H1",
            LastStep::H2Required => "H2",
        }
    }
}

/// H1: adds vertex `n + 1` joined to the three distinct `targets`.
pub fn henneberg_h1(g: &Graph, targets: (usize, usize, usize)) -> Result<Graph, GraphError> {
    let (a, b, c) = targets;
    if a == b || a == c || b == c {
        return Err(GraphError::InvalidArgument(format!(
            "H1 targets must be distinct, got ({a}, {b}, {c})"
        )));
    }
    let mut out = g.clone();
    let z = out.add_vertex();
    out.add_edge(z, a)?;
    out.add_edge(z, b)?;
    out.add_edge(z, c)?;
    Ok(out)
}

/// H2: removes the edge `uv` and adds vertex `n + 1` joined to `u`, `v` and
/// the two `extra` vertices.
pub fn henneberg_h2(
    g: &Graph,
    removed: (usize, usize),
    extra: (usize, usize),
) -> Result<Graph, GraphError> {
    let (u, v) = removed;
    let (a, b) = extra;
    if !g.has_edge(u, v) {
        return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
    }
    if a == b || a == u || a == v || b == u || b == v {
        return Err(GraphError::InvalidArgument(format!(
            "H2 extra vertices must be distinct from each other and from the removed edge, \
             got extra ({a}, {b}) with removed ({u}, {v})"
        )));
    }
    let mut out = g.clone();
    out.remove_edge(u, v)?;
    let z = out.add_vertex();
    for t in [u, v, a, b] {
        out.add_edge(z, t)?;
    }
    Ok(out)
}

/// H3: removes two edges and adds vertex `n + 1` of degree 5.
///
/// For `H3Variant::X` the removed edges must be vertex-disjoint and `attach`
/// must supply exactly one further vertex; for `H3Variant::V` they must share
/// exactly one vertex and `attach` supplies two further vertices. In both
/// cases the new vertex is joined to the removed edges' endpoints and the
/// attach vertices.
pub fn henneberg_h3(
    g: &Graph,
    variant: H3Variant,
    removed: ((usize, usize), (usize, usize)),
    attach: &[usize],
) -> Result<Graph, GraphError> {
    let ((u1, v1), (u2, v2)) = removed;
    for &(a, b) in &[(u1, v1), (u2, v2)] {
        if !g.has_edge(a, b) {
            return Err(GraphError::MissingEdge(a.min(b), a.max(b)));
        }
    }
    if (u1, v1) == (u2, v2) || (u1, v1) == (v2, u2) {
        return Err(GraphError::InvalidArgument(
            "H3 removed edges must be distinct".into(),
        ));
    }
    let mut endpoints = vec![u1, v1, u2, v2];
    endpoints.sort_unstable();
    endpoints.dedup();
    let shared = 4 - endpoints.len();
    let expected_attach = match variant {
        H3Variant::X => {
            if shared != 0 {
                return Err(GraphError::InvalidArgument(
                    "H3x removed edges must be vertex-disjoint".into(),
                ));
            }
            1
        }
        H3Variant::V => {
            if shared != 1 {
                return Err(GraphError::InvalidArgument(
                    "H3v removed edges must share exactly one vertex".into(),
                ));
            }
            2
        }
    };
    if attach.len() != expected_attach {
        return Err(GraphError::InvalidArgument(format!(
            "H3 variant expects {expected_attach} attach vertices, got {}",
            attach.len()
        )));
    }
    let mut joined = endpoints.clone();
    joined.extend_from_slice(attach);
    joined.sort_unstable();
    let before = joined.len();
    joined.dedup();
    if joined.len() != before || joined.len() != 5 {
        return Err(GraphError::InvalidArgument(
            "H3 attach vertices must be distinct from each other and from the removed edges"
                .into(),
        ));
    }
    let mut out = g.clone();
    out.remove_edge(u1, v1)?;
    out.remove_edge(u2, v2)?;
    let z = out.add_vertex();
    for t in joined {
        out.add_edge(z, t)?;
    }
    Ok(out)
}

/// Whether the last construction step can have been H1: true exactly when the
/// graph has a degree-3 vertex (the minimum degree of a minimally rigid graph
/// in 3-space is at least 3, so this is a min-degree test).
pub fn classify_last_step(g: &Graph) -> LastStep {
    if g.min_degree() == 3 {
        LastStep::H1Capable
    } else {
        LastStep::H2Required
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known::k4;

    #[test]
    fn h1_bookkeeping() {
        let g = henneberg_h1(&k4(), (1, 2, 3)).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 9);
        assert!(g.has_geiringer_count());
        assert_eq!(g.degree(5), 3);
        assert!(henneberg_h1(&k4(), (1, 1, 2)).is_err());
    }

    #[test]
    fn h2_bookkeeping() {
        let five = henneberg_h1(&k4(), (1, 2, 3)).unwrap();
        let six = henneberg_h2(&five, (1, 2), (3, 4)).unwrap();
        assert_eq!(six.vertex_count(), 6);
        assert_eq!(six.edge_count(), 12);
        assert!(!six.has_edge(1, 2));
        assert_eq!(six.degree(6), 4);
        assert!(henneberg_h2(&five, (4, 5), (1, 4)).is_err() || !five.has_edge(4, 5));
        assert!(henneberg_h2(&k4(), (1, 2), (3, 3)).is_err());
    }

    #[test]
    fn h3_patterns() {
        // Build a 7-vertex host with enough structure for both variants.
        let mut g = k4();
        for anchors in [(1, 2, 3), (2, 3, 4), (1, 4, 5)] {
            g = henneberg_h1(&g, anchors).unwrap();
        }
        assert_eq!(g.vertex_count(), 7);

        let x = henneberg_h3(&g, H3Variant::X, ((1, 2), (3, 4)), &[5]).unwrap();
        assert_eq!(x.vertex_count(), 8);
        assert_eq!(x.edge_count(), 18);
        assert_eq!(x.degree(8), 5);

        let v = henneberg_h3(&g, H3Variant::V, ((1, 2), (1, 3)), &[4, 5]).unwrap();
        assert_eq!(v.vertex_count(), 8);
        assert_eq!(v.edge_count(), 18);
        assert_eq!(v.degree(8), 5);

        // Pattern violations.
        assert!(henneberg_h3(&g, H3Variant::X, ((1, 2), (1, 3)), &[5]).is_err());
        assert!(henneberg_h3(&g, H3Variant::V, ((1, 2), (3, 4)), &[5, 6]).is_err());
        assert!(henneberg_h3(&g, H3Variant::V, ((1, 2), (1, 2)), &[4, 5]).is_err());
    }

    #[test]
    fn last_step_classification() {
        assert_eq!(
            classify_last_step(&henneberg_h1(&k4(), (1, 2, 3)).unwrap()),
            LastStep::H1Capable
        );
        // The octahedron is 4-regular.
        let oct = crate::known::octahedron();
        assert_eq!(classify_last_step(&oct), LastStep::H2Required);
    }
}
