//! Randomized rigidity tests.
//!
//! A framework on a graph is a realization of its vertices in 3-space; the
//! rigidity matrix collects the gradients of the squared edge lengths. At a
//! generic realization its rank equals `3n − 6` exactly when the graph is
//! generically rigid, so evaluating at a random rational point and computing
//! a numerical rank is a reliable randomized test (repeated to guard against
//! unlucky sample points).
//!
//! Global rigidity (uniqueness of the realization given the lengths, up to
//! congruence) is certified by the stress-matrix condition: pick a random
//! equilibrium stress at a generic realization and check that its `n × n`
//! stress matrix has rank `n − 4`. The test is one-sided — a passing run is
//! a certificate, a failing run may be bad luck — so it is repeated as well.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::graph::{Graph, GraphError};

/// Relative singular-value threshold for numerical rank decisions.
const RANK_TOL: f64 = 1e-8;

/// Trials for the randomized tests.
const TRIALS: usize = 3;

/// Draws a realization with coordinates on the integer grid
/// `[−10⁶, 10⁶]³` scaled into the unit box, one point per vertex.
pub fn random_realization(n: usize, rng: &mut impl Rng) -> Vec<[f64; 3]> {
    (0..n)
        .map(|_| {
            let mut p = [0.0; 3];
            for c in &mut p {
                *c = rng.gen_range(-1_000_000i64..=1_000_000) as f64 / 1e6;
            }
            p
        })
        .collect()
}

/// The `|E| × 3n` rigidity matrix at `pos` (row per edge: the gradient of
/// that edge's squared length).
pub fn rigidity_matrix(g: &Graph, pos: &[[f64; 3]]) -> DMatrix<f64> {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut m = DMatrix::zeros(edges.len(), 3 * n);
    for (r, &(a, b)) in edges.iter().enumerate() {
        let (pa, pb) = (pos[a - 1], pos[b - 1]);
        for c in 0..3 {
            m[(r, 3 * (a - 1) + c)] = pa[c] - pb[c];
            m[(r, 3 * (b - 1) + c)] = pb[c] - pa[c];
        }
    }
    m
}

fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * max)
        .count()
}

/// Whether `g` is generically rigid in 3-space: the rigidity matrix at a
/// random realization reaches rank `3n − 6`. Rank can only fall below the
/// generic value at special points, so any passing trial decides.
pub fn is_generically_rigid(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return true; // a point or a bar admits no nontrivial flex
    }
    let target = 3 * n - 6;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5247_4944);
    for _ in 0..TRIALS {
        let pos = random_realization(n, &mut rng);
        if numerical_rank(&rigidity_matrix(g, &pos)) == target {
            return true;
        }
    }
    false
}

/// One-sided randomized test for generic global rigidity via the
/// stress-matrix rank condition.
///
/// At a generic realization the equilibrium stresses form the cokernel of
/// the rigidity matrix; a random stress from that space is spread into the
/// `n × n` stress matrix (off-diagonal `−ω_e`, diagonal making rows sum to
/// zero), and rank `n − 4` certifies global rigidity. Graphs without any
/// equilibrium stress (e.g. minimally rigid graphs with `n ≥ 5`) fail the
/// rank condition and are reported not globally rigid, as they should be.
pub fn is_globally_rigid(g: &Graph) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    if !is_generically_rigid(g) {
        return Err(GraphError::InvalidArgument(
            "global rigidity test requires a generically rigid graph".into(),
        ));
    }
    if n <= 4 {
        // Complete on ≤ 4 vertices is the only rigid case here and is
        // globally rigid; the stress space is empty and rank n − 4 ≤ 0
        // holds vacuously.
        return Ok(true);
    }
    let edges = g.edges();
    let mut rng = ChaCha8Rng::seed_from_u64(0x474c_4f42);
    for _ in 0..TRIALS {
        let pos = random_realization(n, &mut rng);
        let r = rigidity_matrix(g, &pos);
        // Cokernel basis = null space of Rᵀ = eigenvectors of the |E| × |E|
        // Gram matrix R·Rᵀ with negligible eigenvalue. (A thin SVD of R would
        // drop cokernel directions whenever |E| > 3n.)
        let gram = &r * r.transpose();
        let eig = gram.symmetric_eigen();
        let lmax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for i in 0..eig.eigenvalues.len() {
            // Eigenvalues are squared singular values; 1e-12 relative keeps a
            // clear margin between true stresses (~1e-24 relative) and the
            // smallest genuine eigenvalue at a generic realization.
            if eig.eigenvalues[i] <= 1e-12 * lmax.max(1.0) {
                basis.push(eig.eigenvectors.column(i).iter().copied().collect());
            }
        }
        if basis.is_empty() {
            continue; // no stress at all: cannot certify
        }
        // Random combination of the cokernel basis.
        let mut omega = vec![0.0f64; edges.len()];
        for b in &basis {
            let c: f64 = rng.gen_range(-1.0..1.0);
            for (w, &bv) in omega.iter_mut().zip(b.iter()) {
                *w += c * bv;
            }
        }
        let mut stress = DMatrix::<f64>::zeros(n, n);
        for (e, &(a, b)) in edges.iter().enumerate() {
            stress[(a - 1, b - 1)] = -omega[e];
            stress[(b - 1, a - 1)] = -omega[e];
            stress[(a - 1, a - 1)] += omega[e];
            stress[(b - 1, b - 1)] += omega[e];
        }
        if numerical_rank(&stress) == n - 4 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Smallest set of non-edges whose addition makes `g` globally rigid,
/// searching sizes `1, 2, …, n − 4` over lexicographically ordered subsets.
pub fn find_global_extension(g: &Graph) -> Result<Vec<(usize, usize)>, GraphError> {
    let n = g.vertex_count();
    if n < 5 {
        return Ok(Vec::new()); // K4 and smaller are already globally rigid
    }
    let non_edges = g.non_edges();
    let max_k = n - 4;
    let mut combo = Combos::new(non_edges.len());
    for k in 1..=max_k.min(non_edges.len()) {
        combo.reset(k);
        while let Some(idx) = combo.next() {
            let mut h = g.clone();
            for &i in idx {
                let (a, b) = non_edges[i];
                h.add_edge(a, b)?;
            }
            if is_globally_rigid(&h)? {
                return Ok(idx.iter().map(|&i| non_edges[i]).collect());
            }
        }
    }
    Err(GraphError::InvalidArgument(format!(
        "no globally rigid extension of size ≤ {max_k} found"
    )))
}

/// Lexicographic k-subset enumerator over `0..n`.
pub struct Combos {
    n: usize,
    k: usize,
    state: Vec<usize>,
    fresh: bool,
}

impl Combos {
    pub fn new(n: usize) -> Self {
        Combos {
            n,
            k: 0,
            state: Vec::new(),
            fresh: false,
        }
    }

    pub fn reset(&mut self, k: usize) {
        self.k = k;
        self.state = (0..k).collect();
        self.fresh = true;
    }

    /// Next k-subset in lexicographic order, or `None` when exhausted.
    pub fn next(&mut self) -> Option<&[usize]> {
        if self.k > self.n {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.state);
        }
        // Standard successor: bump the rightmost index that can move.
        let k = self.k;
        if k == 0 {
            return None;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.state[i] != i + self.n - k {
                break;
            }
        }
        self.state[i] += 1;
        for j in i + 1..k {
            self.state[j] = self.state[j - 1] + 1;
        }
        Some(&self.state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known::{double_banana, five_vertex, g48, k4, k5, octahedron};

    #[test]
    fn k4_and_friends_are_rigid() {
        assert!(is_generically_rigid(&k4()));
        assert!(is_generically_rigid(&five_vertex()));
        assert!(is_generically_rigid(&octahedron()));
        assert!(is_generically_rigid(&g48()));
    }

    #[test]
    fn double_banana_is_flexible() {
        let g = double_banana();
        assert!(g.has_geiringer_count());
        assert!(!is_generically_rigid(&g));
    }

    #[test]
    fn stress_certificates() {
        assert!(is_globally_rigid(&k5()).unwrap());
        assert!(!is_globally_rigid(&g48()).unwrap());
        let mut extended = g48();
        extended.add_edge(1, 7).unwrap();
        assert!(is_globally_rigid(&extended).unwrap());
    }

    #[test]
    fn extension_search() {
        // The 5-vertex graph misses exactly one edge; adding it gives K5.
        assert_eq!(find_global_extension(&five_vertex()).unwrap(), vec![(4, 5)]);
        assert_eq!(find_global_extension(&g48()).unwrap(), vec![(1, 7)]);
        let mut k5m = k5();
        k5m.remove_edge(2, 3).unwrap();
        assert_eq!(find_global_extension(&k5m).unwrap(), vec![(2, 3)]);
    }

    #[test]
    fn combos_enumerate_lexicographically() {
        let mut c = Combos::new(4);
        c.reset(2);
        let mut seen = Vec::new();
        while let Some(s) = c.next() {
            seen.push(s.to_vec());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
