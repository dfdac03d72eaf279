//! Fixed graphs used throughout the crate family: small complete graphs, the
//! named 7-vertex graphs that require an H2 step (with their customary
//! labelings), the two interesting 8-vertex graphs, and the classic
//! counterexample showing that the edge count alone does not imply rigidity.

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("hard-coded edge list is valid")
}

/// Triangle `K3`.
pub fn triangle() -> Graph {
    build(3, &[(1, 2), (1, 3), (2, 3)])
}

/// Tetrahedron `K4`, the seed of every Henneberg construction here.
pub fn k4() -> Graph {
    build(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
}

/// Complete graph `K5`.
pub fn k5() -> Graph {
    let mut g = Graph::new(5);
    for a in 1..5 {
        for b in a + 1..=5 {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// The unique 5-vertex minimally rigid graph (`K5` minus one edge; a
/// triangle bipyramid).
pub fn five_vertex() -> Graph {
    let mut g = k5();
    g.remove_edge(4, 5).unwrap();
    g
}

/// The octahedron (`K_{2,2,2}`): the 6-vertex graph whose last construction
/// step must be H2. All vertices have degree 4; the three non-edges are
/// `{1,6}, {2,5}, {3,4}`.
pub fn octahedron() -> Graph {
    build(
        6,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 6),
            (3, 5),
            (3, 6),
            (4, 5),
            (4, 6),
            (5, 6),
        ],
    )
}

/// Pentagonal bipyramid on 7 vertices: rim cycle 2–3–4–5–6–2 with apexes 1
/// and 7. Its generic complex embedding count is 48, the maximum among
/// 7-vertex graphs.
pub fn g48() -> Graph {
    build(
        7,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 3),
            (2, 6),
            (2, 7),
            (3, 4),
            (3, 7),
            (4, 5),
            (4, 7),
            (5, 6),
            (5, 7),
            (6, 7),
        ],
    )
}

/// 7-vertex H2-required graph with 32 complex embeddings (first of two).
pub fn g32a() -> Graph {
    build(
        7,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 6),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (3, 6),
            (3, 7),
            (4, 7),
            (5, 6),
            (5, 7),
            (6, 7),
        ],
    )
}

/// 7-vertex H2-required graph with 32 complex embeddings (second of two).
pub fn g32b() -> Graph {
    build(
        7,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 4),
            (3, 6),
            (3, 7),
            (4, 5),
            (4, 7),
            (5, 6),
            (6, 7),
        ],
    )
}

/// 7-vertex H2-required graph with 24 complex embeddings.
pub fn g24() -> Graph {
    build(
        7,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 4),
            (3, 6),
            (3, 7),
            (4, 6),
            (4, 7),
            (5, 6),
            (5, 7),
        ],
    )
}

/// 7-vertex H2-required graph with 16 complex embeddings (first of two).
pub fn g16a() -> Graph {
    build(
        7,
        &[
            (1, 2),
            (1, 3),
            (1, 6),
            (1, 7),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (3, 6),
            (3, 7),
            (4, 6),
            (4, 7),
            (5, 6),
            (5, 7),
        ],
    )
}

/// 7-vertex H2-required graph with 16 complex embeddings (second of two).
pub fn g16b() -> Graph {
    build(
        7,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 5),
            (3, 6),
            (3, 7),
            (4, 5),
            (4, 6),
            (4, 7),
            (6, 7),
        ],
    )
}

/// Hexagonal bipyramid on 8 vertices: rim cycle 2–3–4–5–6–7–2 with apexes 1
/// and 8; 128 complex embeddings.
pub fn g128() -> Graph {
    build(
        8,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (2, 3),
            (2, 7),
            (2, 8),
            (3, 4),
            (3, 8),
            (4, 5),
            (4, 8),
            (5, 6),
            (5, 8),
            (6, 7),
            (6, 8),
            (7, 8),
        ],
    )
}

/// The unique 8-vertex graph with 160 complex embeddings, the maximum for
/// 8 vertices.
pub fn g160() -> Graph {
    build(
        8,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 3),
            (2, 6),
            (2, 7),
            (2, 8),
            (3, 4),
            (3, 7),
            (4, 5),
            (4, 7),
            (5, 6),
            (5, 7),
            (5, 8),
            (6, 8),
            (7, 8),
        ],
    )
}

/// The "double banana": two copies of `K5` minus an edge, glued along the
/// two endpoints of the missing edge. It has `3n − 6` edges but is flexible
/// (the halves rotate about the shared pair), so the edge count alone does
/// not certify rigidity.
pub fn double_banana() -> Graph {
    build(
        8,
        &[
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (1, 8),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (2, 8),
            (3, 4),
            (3, 5),
            (4, 5),
            (6, 7),
            (6, 8),
            (7, 8),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        for (g, n) in [
            (triangle(), 3),
            (k4(), 4),
            (five_vertex(), 5),
            (octahedron(), 6),
            (g48(), 7),
            (g32a(), 7),
            (g32b(), 7),
            (g24(), 7),
            (g16a(), 7),
            (g16b(), 7),
            (g128(), 8),
            (g160(), 8),
            (double_banana(), 8),
        ] {
            assert_eq!(g.vertex_count(), n);
            assert!(g.has_geiringer_count(), "3n-6 count failed for n={n}");
        }
    }

    #[test]
    fn octahedron_is_4_regular() {
        let g = octahedron();
        assert!((1..=6).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn g48_is_pentagonal_bipyramid() {
        let g = g48();
        for apex in [1, 7] {
            assert_eq!(g.degree(apex), 5);
        }
        for rim in 2..=6 {
            assert_eq!(g.degree(rim), 4);
        }
        assert!(!g.has_edge(1, 7));
    }
}
