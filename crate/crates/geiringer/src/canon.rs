//! Canonical labeling by individualization–refinement.
//!
//! Two graphs are isomorphic exactly when their canonical labels agree, which
//! is what catalog deduplication needs. The label is the lexicographically
//! smallest upper-triangle adjacency encoding over all vertex orderings; the
//! search only visits orderings that survive equitable-partition refinement,
//! so it stays far below `n!` in practice. A brute-force enumeration over all
//! permutations is kept alongside as a correctness oracle for small graphs.
//!
//! Encoding: for an ordering `π`, bit `k` of the label (most significant
//! first) corresponds to the pair `(i, j)`, `i < j`, enumerated in row-major
//! order `(1,2), (1,3), …, (n−1,n)`, and is set when `{π⁻¹(i), π⁻¹(j)}` is an
//! edge. Graphs here have at most 12 vertices (66 pairs), so the bits fit in
//! a `u128` together with the vertex count.

use std::fmt;

use crate::graph::Graph;

/// Relabeling-invariant encoding of a graph; equal labels ⟺ isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel {
    n: u8,
    bits: u128,
}

impl CanonicalLabel {
    /// Vertex count of the labeled graph.
    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    /// The raw adjacency bits (row-major upper triangle, MSB first).
    pub fn bits(&self) -> u128 {
        self.bits
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}-{:x}", self.n, self.bits)
    }
}

/// Maximum vertex count the `u128` pair encoding supports.
pub const MAX_CANON_VERTICES: usize = 12;

fn pair_bit_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Encodes a graph under `position[v] = rank of v` (0-based ranks).
fn encode(g: &Graph, position: &[usize]) -> u128 {
    let n = g.vertex_count();
    let total = pair_bit_count(n);
    let mut bits = 0u128;
    for (a, b) in g.edges() {
        let (i, j) = {
            let (pa, pb) = (position[a], position[b]);
            (pa.min(pb), pb.max(pa))
        };
        // Row-major index of pair (i, j), i < j, among all C(n, 2) pairs.
        let idx = i * (2 * n - i - 1) / 2 + (j - i - 1);
        bits |= 1u128 << (total - 1 - idx);
    }
    bits
}

/// Ordered partition of the vertices; each cell is sorted.
type Partition = Vec<Vec<usize>>;

/// Splits every cell by each vertex's neighbor counts into the current cells,
/// repeating until no cell splits (equitable refinement). Cell order is kept
/// deterministic: split pieces replace their parent in order of their count
/// signatures.
fn refine(g: &Graph, mut parts: Partition) -> Partition {
    loop {
        let mut changed = false;
        // Count, for every vertex, its neighbors inside each current cell.
        let n = g.vertex_count();
        let mut cell_of = vec![0usize; n + 1];
        for (ci, cell) in parts.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let mut next: Partition = Vec::with_capacity(parts.len());
        for cell in &parts {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0usize; parts.len()];
                    for u in g.neighbors(v) {
                        sig[cell_of[u]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    if start != 0 || i != keyed.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        parts = next;
        if !changed {
            return parts;
        }
    }
}

fn search(g: &Graph, parts: Partition, best: &mut Option<(u128, Vec<usize>)>) {
    let parts = refine(g, parts);
    // Find the first non-singleton cell; if none, the partition is discrete
    // and yields a candidate ordering.
    let target = parts.iter().position(|c| c.len() > 1);
    match target {
        None => {
            let n = g.vertex_count();
            let mut position = vec![0usize; n + 1];
            for (rank, cell) in parts.iter().enumerate() {
                position[cell[0]] = rank;
            }
            let bits = encode(g, &position);
            match best {
                Some((b, _)) if *b <= bits => {}
                _ => *best = Some((bits, position)),
            }
        }
        Some(ti) => {
            // Branch: individualize each vertex of the target cell in turn.
            for &v in &parts[ti] {
                let mut child: Partition = Vec::with_capacity(parts.len() + 1);
                for (ci, cell) in parts.iter().enumerate() {
                    if ci == ti {
                        child.push(vec![v]);
                        child.push(cell.iter().copied().filter(|&u| u != v).collect());
                    } else {
                        child.push(cell.clone());
                    }
                }
                search(g, child, best);
            }
        }
    }
}

/// Canonical label of `g`, plus the relabeling that realizes it: vertex `v`
/// of `g` becomes vertex `perm[v]` (1-based) of the canonical form.
pub fn canonical_form(g: &Graph) -> (CanonicalLabel, Vec<usize>) {
    let n = g.vertex_count();
    assert!(
        n >= 1 && n <= MAX_CANON_VERTICES,
        "canonical labeling supports 1..={MAX_CANON_VERTICES} vertices, got {n}"
    );
    let mut best: Option<(u128, Vec<usize>)> = None;
    search(g, vec![(1..=n).collect()], &mut best);
    let (bits, position) = best.expect("at least one discrete partition exists");
    let mut perm = vec![0usize; n + 1];
    for v in 1..=n {
        perm[v] = position[v] + 1;
    }
    (
        CanonicalLabel { n: n as u8, bits },
        perm,
    )
}

/// Canonical label alone.
pub fn canonical_label(g: &Graph) -> CanonicalLabel {
    canonical_form(g).0
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, perm) = canonical_form(g);
    let mut out = Graph::new(g.vertex_count());
    for (a, b) in g.edges() {
        out.add_edge(perm[a], perm[b]).unwrap();
    }
    out
}

/// Reference implementation: minimum encoding over all `n!` orderings.
/// Exponential; intended as a test oracle for `n ≤ 8`.
pub fn canonical_label_bruteforce(g: &Graph) -> CanonicalLabel {
    let n = g.vertex_count();
    assert!(n <= 8, "brute-force canonicalizer is for n ≤ 8");
    let mut order: Vec<usize> = (1..=n).collect();
    let mut best = u128::MAX;
    permute(&mut order, 0, &mut |perm| {
        let mut position = vec![0usize; n + 1];
        for (rank, &v) in perm.iter().enumerate() {
            position[v] = rank;
        }
        let bits = encode(g, &position);
        if bits < best {
            best = bits;
        }
    });
    CanonicalLabel {
        n: n as u8,
        bits: best,
    }
}

fn permute(order: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == order.len() {
        visit(order);
        return;
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, visit);
        order.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known::{g32a, g32b, g48, k4, octahedron};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn random_relabel(g: &Graph, rng: &mut impl rand::Rng) -> Graph {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(rng);
        let mut out = Graph::new(n);
        for (a, b) in g.edges() {
            out.add_edge(perm[a - 1], perm[b - 1]).unwrap();
        }
        out
    }

    #[test]
    fn label_is_relabeling_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [k4(), octahedron(), g48(), g32a()] {
            let base = canonical_label(&g);
            for _ in 0..20 {
                let h = random_relabel(&g, &mut rng);
                assert_eq!(canonical_label(&h), base);
            }
        }
    }

    #[test]
    fn distinct_graphs_get_distinct_labels() {
        assert_ne!(canonical_label(&g32a()), canonical_label(&g32b()));
    }

    #[test]
    fn matches_bruteforce_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for g in [k4(), crate::known::five_vertex(), octahedron(), g48()] {
            assert_eq!(canonical_label(&g), canonical_label_bruteforce(&g));
            let h = random_relabel(&g, &mut rng);
            assert_eq!(canonical_label(&h), canonical_label_bruteforce(&h));
        }
    }

    #[test]
    fn canonical_graph_reproduces_label() {
        let g = g48();
        let cg = canonical_graph(&g);
        assert_eq!(canonical_label(&cg), canonical_label(&g));
        // The canonical graph encodes itself under the identity ordering.
        let n = cg.vertex_count();
        let position: Vec<usize> = (0..=n).map(|v| v.saturating_sub(1)).collect();
        assert_eq!(encode(&cg, &position), canonical_label(&g).bits());
    }
}
