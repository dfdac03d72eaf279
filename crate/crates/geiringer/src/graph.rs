//! Simple undirected graphs with 1-based vertex labels.
//!
//! Vertices are `1..=n` and edges are unordered pairs stored in normalized
//! `(min, max)` form. The representation is a vector of sorted neighbor sets,
//! which keeps edge iteration deterministic — catalog files, canonical forms
//! and test fixtures all rely on that ordering.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Errors raised by graph construction and editing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// An undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>, // index 0 unused
}

/// Serialized form: `{"vertices": n, "edges": [[i, j], ...]}` with 1-based labels.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Creates an edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates, and
    /// out-of-range labels.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// Inserts the edge `{a, b}`.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.adj[a].contains(&b) {
            return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
        }
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(())
    }

    /// Removes the edge `{a, b}`.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if !self.adj[a].contains(&b) {
            return Err(GraphError::MissingEdge(a.min(b), a.max(b)));
        }
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        Ok(())
    }

    /// Appends a fresh vertex labeled `n + 1` and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.adj.push(BTreeSet::new());
        self.n
    }

    /// True iff `{a, b}` is an edge.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a >= 1 && a <= self.n && self.adj[a].contains(&b)
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Smallest vertex degree (graphs here are non-empty).
    pub fn min_degree(&self) -> usize {
        (1..=self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// All edges as normalized pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 1..=self.n {
            for &b in self.adj[a].range(a + 1..) {
                out.push((a, b));
            }
        }
        out
    }

    /// Non-edges (complement pairs) as normalized pairs in ascending order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..self.n {
            for b in a + 1..=self.n {
                if !self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All triangles `(a, b, c)`, `a < b < c`, in ascending order.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            for &c in self.adj[a].range(b + 1..) {
                if self.adj[b].contains(&c) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Deletes vertex `v`, relabeling `v+1..=n` down by one. Used to peel a
    /// degree-3 vertex off when walking a Henneberg construction backwards.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let mut g = Graph::new(self.n - 1);
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.add_edge(relabel(a), relabel(b))?;
            }
        }
        Ok(g)
    }

    /// True iff the vertex-count/edge-count relation of minimal rigidity in
    /// 3-space holds: `|E| = 3n − 6`.
    pub fn has_geiringer_count(&self) -> bool {
        self.n >= 3 && self.edge_count() == 3 * self.n - 6
    }

    /// Serializes to the edge-list JSON format.
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: self.n,
            edges: self.edges(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail")
    }

    /// Parses the edge-list JSON format.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson = serde_json::from_str(text)
            .map_err(|e| GraphError::InvalidArgument(format!("bad graph JSON: {e}")))?;
        Graph::from_edges(doc.vertices, &doc.edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(2, 4));
        assert!(g.has_geiringer_count());
        assert_eq!(g.triangles().len(), 4);
        assert_eq!(g.non_edges(), vec![]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 4)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn delete_vertex_relabels() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let h = g.delete_vertex(2).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges(), vec![(2, 3)]);
    }
}
