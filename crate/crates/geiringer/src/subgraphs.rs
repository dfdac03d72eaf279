//! Five-vertex sampling subgraphs.
//!
//! The two-parameter length family used by the coupler-curve sampler needs a
//! tuple `(u, v, w, p, c)` where `u` has degree exactly 4, its neighbors are
//! `{v, w, p, c}`, and both `vw` and `pv` are edges. The tuple is *spherical*
//! when `cw` is also an edge — then the curve traced by `c` lies on a sphere
//! around `w`, which is what makes the two-parameter sampling work.

use crate::graph::Graph;

/// A sampling subgraph `(u, v, w, p, c)`; see the module docs for the
/// required edges. `spherical` is true iff `cw ∈ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingSubgraph {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub p: usize,
    pub c: usize,
    pub spherical: bool,
}

impl SamplingSubgraph {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.u, self.v, self.w, self.p, self.c)
    }
}

impl std::fmt::Display for SamplingSubgraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{},{})", self.u, self.v, self.w, self.p, self.c)
    }
}

/// Enumerates all sampling subgraphs in a deterministic order: ascending
/// degree-4 vertex `u`, ascending `v ∈ N(u)`, ascending remaining pair.
///
/// For a fixed `u` and `v`, a valid tuple takes `{w, p}` as a pair of the
/// remaining neighbors with both `vw, vp ∈ E`, and `c` as the last one. The
/// `{w, p}` orientation is normalized: `w` is the member adjacent to `c` if
/// exactly one is (making the tuple spherical); otherwise the smaller label
/// is `w`.
pub fn suitable_subgraphs(g: &Graph) -> Vec<SamplingSubgraph> {
    let mut out = Vec::new();
    for u in 1..=g.vertex_count() {
        if g.degree(u) != 4 {
            continue;
        }
        let nb: Vec<usize> = g.neighbors(u).collect();
        for &v in &nb {
            let rest: Vec<usize> = nb.iter().copied().filter(|&x| x != v).collect();
            // rest is ascending; choose which member is c (the one left out
            // of the pair), iterating so that the {w, p} pair is ascending.
            for ci in (0..3).rev() {
                let c = rest[ci];
                let pair: Vec<usize> = rest
                    .iter()
                    .copied()
                    .filter(|&x| x != c)
                    .collect();
                let (a, b) = (pair[0], pair[1]);
                if !g.has_edge(v, a) || !g.has_edge(v, b) {
                    continue;
                }
                let (w, p) = orient(g, a, b, c);
                out.push(SamplingSubgraph {
                    u,
                    v,
                    w,
                    p,
                    c,
                    spherical: g.has_edge(c, w),
                });
            }
        }
    }
    out
}

/// Picks the `w` of the pair `{a, b}`: the member adjacent to `c` when
/// exactly one is, else the smaller label.
fn orient(g: &Graph, a: usize, b: usize, c: usize) -> (usize, usize) {
    let ca = g.has_edge(c, a);
    let cb = g.has_edge(c, b);
    if ca && !cb {
        (a, b)
    } else if cb && !ca {
        (b, a)
    } else {
        (a.min(b), a.max(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known::{g48, k4};

    #[test]
    fn g48_has_twenty() {
        let subs = suitable_subgraphs(&g48());
        assert_eq!(subs.len(), 20);
        for s in &subs {
            assert_eq!(g48().degree(s.u), 4);
            assert!(g48().has_edge(s.p, s.v));
            assert!(g48().has_edge(s.v, s.w));
            assert_eq!(s.spherical, g48().has_edge(s.c, s.w));
        }
        // Tuples used in the worked examples must be present.
        for expect in [
            (2, 3, 1, 7, 6),
            (5, 6, 1, 7, 4),
            (4, 3, 1, 7, 5),
            (3, 2, 1, 7, 4),
        ] {
            assert!(
                subs.iter().any(|s| s.as_tuple() == expect),
                "missing {expect:?}"
            );
        }
    }

    #[test]
    fn k4_has_none() {
        assert!(suitable_subgraphs(&k4()).is_empty());
    }
}
