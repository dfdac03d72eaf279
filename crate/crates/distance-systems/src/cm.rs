//! Distance-matrix (Cayley–Menger) formulation.
//!
//! The squared-distance matrix of `n` points in 3-space, bordered by a row
//! and column of ones, has rank 5; every bordered 6×6 minor therefore
//! vanishes. Treating the squared distances of selected non-edges as
//! unknowns turns chosen minors into polynomial equations, giving a square
//! system in as few as `n − 4` variables. Embeddability additionally
//! requires the alternating-sign conditions `(−1)^k det ≥ 0` on all bordered
//! submatrices with `k = 2, 3, 4` points.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use geiringer::{Combos, Graph};

use crate::error::SystemError;
use crate::lengths::LengthAssignment;
use crate::poly::{Formulation, Polynomial, PolynomialSystem};

/// Lower bound on the scaled Jacobian singular value below which a candidate
/// minor selection is considered singular and skipped.
const JACOBIAN_TOL: f64 = 1e-8;

/// Seed for the fixed random point at which candidate Jacobians are tested;
/// a constant keeps the minor selection fully deterministic.
const SELECTION_SEED: u64 = 0x434d_5345;

/// Relative tolerance for the alternating-sign determinant inequalities.
const INEQUALITY_TOL: f64 = 1e-9;

/// Relative tolerance under which two candidate roots of different
/// completion minors are considered the same distance value.
const COMPLETION_ROOT_TOL: f64 = 1e-5;

/// One entry of the bordered squared-distance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CmEntry {
    /// Diagonal entries and the bordered corner.
    Zero,
    /// The border row and column.
    One,
    /// Squared length of an edge.
    Known(f64),
    /// The `idx`-th unknown (squared distance of a chosen non-edge).
    Var(usize),
    /// A non-edge that was neither given a length nor chosen as unknown.
    Unspecified,
}

/// The bordered squared-distance matrix of a graph with some non-edges kept
/// symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct CmMatrix {
    /// Matrix dimension, `n + 1` for an `n`-vertex graph.
    pub size: usize,
    /// Row-major entries; index 0 is the border.
    pub entries: Vec<Vec<CmEntry>>,
    /// Non-edge pair backing each unknown, in variable order.
    pub var_pairs: Vec<(usize, usize)>,
    /// Non-edges left unspecified (must be empty before subsystem use).
    pub unspecified: Vec<(usize, usize)>,
}

impl CmMatrix {
    /// Entry for the vertex pair `(i, j)` (1-based vertices).
    pub fn entry(&self, i: usize, j: usize) -> CmEntry {
        self.entries[i][j]
    }
}

impl fmt::Display for CmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    CmEntry::Zero => "0".to_string(),
                    CmEntry::One => "1".to_string(),
                    CmEntry::Known(v) => format!("{v:.6}"),
                    CmEntry::Var(k) => format!("x{}", k + 1),
                    CmEntry::Unspecified => "?".to_string(),
                })
                .collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

/// Builds the bordered squared-distance matrix of `g`, keeping the squared
/// distances of `unknowns` symbolic. Non-edges outside `unknowns` are marked
/// [`CmEntry::Unspecified`] and listed in the result.
pub fn build_cm_matrix(
    g: &Graph,
    d: &LengthAssignment,
    unknowns: &[(usize, usize)],
) -> Result<CmMatrix, SystemError> {
    d.require_cover(g)?;
    let mut seen = BTreeMap::new();
    for (idx, &(u, v)) in unknowns.iter().enumerate() {
        if u == v || u < 1 || v < 1 || u > g.vertex_count() || v > g.vertex_count() {
            return Err(SystemError::InvalidArgument(format!(
                "unknown pair ({u}, {v}) is not a vertex pair of the graph"
            )));
        }
        if g.has_edge(u, v) {
            return Err(SystemError::InvalidArgument(format!(
                "unknown pair ({u}, {v}) is an edge and already has a length"
            )));
        }
        if seen.insert((u.min(v), u.max(v)), idx).is_some() {
            return Err(SystemError::InvalidArgument(format!(
                "unknown pair ({u}, {v}) listed twice"
            )));
        }
    }

    let n = g.vertex_count();
    let mut entries = vec![vec![CmEntry::One; n + 1]; n + 1];
    let mut unspecified = Vec::new();
    entries[0][0] = CmEntry::Zero;
    for i in 1..=n {
        entries[i][i] = CmEntry::Zero;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let e = if g.has_edge(i, j) {
                CmEntry::Known(d.squared(i, j).expect("cover checked"))
            } else if let Some(&idx) = seen.get(&(i, j)) {
                CmEntry::Var(idx)
            } else {
                unspecified.push((i, j));
                CmEntry::Unspecified
            };
            entries[i][j] = e;
            entries[j][i] = e;
        }
    }
    Ok(CmMatrix {
        size: n + 1,
        entries,
        var_pairs: unknowns.to_vec(),
        unspecified,
    })
}

/// Expands the bordered minor on vertex set `points` (plus the border) as a
/// polynomial in the matrix unknowns, by the Leibniz sum over the
/// `(|points| + 1)!` permutations. Entries must be free of
/// [`CmEntry::Unspecified`]; the caller guarantees this.
fn minor_polynomial(cm: &CmMatrix, points: &[usize], nvars: usize) -> Polynomial {
    let idx: Vec<usize> = std::iter::once(0).chain(points.iter().copied()).collect();
    let m = idx.len();
    let mut poly = Polynomial::zero(nvars);
    for perm in (0..m).permutations(m) {
        // Sign by inversion count.
        let mut inversions = 0usize;
        for a in 0..m {
            for b in a + 1..m {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        let mut zero = false;
        for (row, &col) in perm.iter().enumerate() {
            match cm.entries[idx[row]][idx[col]] {
                CmEntry::Zero => {
                    zero = true;
                    break;
                }
                CmEntry::One => {}
                CmEntry::Known(v) => coeff *= v,
                CmEntry::Var(k) => exps[k] += 1,
                CmEntry::Unspecified => unreachable!("caller excludes unspecified entries"),
            }
        }
        if !zero {
            poly.add_term(&exps, Complex64::new(coeff, 0.0));
        }
    }
    poly
}

/// A bordered 6×6 minor admissible for subsystem use: its five vertices,
/// the subsystem variables it involves, and its expanded polynomial.
#[derive(Debug, Clone)]
pub struct CandidateMinor {
    pub points: Vec<usize>,
    pub covered: Vec<usize>,
    pub poly: Polynomial,
}

/// Enumerates the bordered 6×6 minors usable with the chosen variables: five
/// vertices whose internal pairs are all edges or chosen variables, with at
/// least one variable pair among them (a fully numeric minor is constant and
/// can neither cover a variable nor sit in a square system).
pub fn candidate_minors(
    g: &Graph,
    d: &LengthAssignment,
    vars: &[(usize, usize)],
) -> Result<Vec<CandidateMinor>, SystemError> {
    let non_edges = g.non_edges();
    let mut chosen_idx = BTreeMap::new();
    for (idx, &(u, v)) in vars.iter().enumerate() {
        if !non_edges.contains(&(u.min(v), u.max(v))) {
            return Err(SystemError::InvalidArgument(format!(
                "subsystem variable ({u}, {v}) is not a non-edge"
            )));
        }
        if chosen_idx.insert((u.min(v), u.max(v)), idx).is_some() {
            return Err(SystemError::InvalidArgument(format!(
                "subsystem variable ({u}, {v}) listed twice"
            )));
        }
    }
    let cm = build_cm_matrix(g, d, &non_edges)?;
    // Remap: matrix unknowns are all non-edges; the subsystem only keeps the
    // chosen ones, so minors touching any other non-edge are inadmissible.
    let keep: BTreeMap<usize, usize> = non_edges
        .iter()
        .enumerate()
        .filter_map(|(mat_idx, pair)| chosen_idx.get(pair).map(|&sub| (mat_idx, sub)))
        .collect();

    let mut out = Vec::new();
    if g.vertex_count() < 5 {
        return Ok(out);
    }
    let mut combos = Combos::new(g.vertex_count());
    combos.reset(5);
    while let Some(subset) = combos.next() {
        let points: Vec<usize> = subset.iter().map(|i| i + 1).collect();
        let mut covered = Vec::new();
        let mut admissible = true;
        'pairs: for a in 0..5 {
            for b in a + 1..5 {
                match cm.entries[points[a]][points[b]] {
                    CmEntry::Known(_) => {}
                    CmEntry::Var(mat_idx) => match keep.get(&mat_idx) {
                        Some(&sub) => {
                            if !covered.contains(&sub) {
                                covered.push(sub);
                            }
                        }
                        None => {
                            admissible = false;
                            break 'pairs;
                        }
                    },
                    _ => unreachable!("off-diagonal vertex pairs are Known or Var"),
                }
            }
        }
        if !admissible || covered.is_empty() {
            continue;
        }
        covered.sort_unstable();
        // Re-expand against a matrix whose unknown indices are the subsystem
        // variable indices.
        let sub_cm = build_cm_matrix(g, d, vars)?;
        let poly = minor_polynomial(&sub_cm, &points, vars.len());
        out.push(CandidateMinor {
            points,
            covered,
            poly,
        });
    }
    Ok(out)
}

/// Selects a square determinantal subsystem for the chosen non-edge
/// variables: the lexicographically first combination of `k` admissible
/// minors that together involve every variable and whose Jacobian at a
/// fixed random point is nonsingular.
///
/// An empty variable list yields the empty system (nothing to solve — the
/// graph's distances are already determined).
pub fn cm_subsystem(
    g: &Graph,
    d: &LengthAssignment,
    vars: &[(usize, usize)],
) -> Result<PolynomialSystem, SystemError> {
    let k = vars.len();
    if k == 0 {
        return Ok(PolynomialSystem {
            formulation: Formulation::CayleyMenger { pairs: Vec::new() },
            var_names: Vec::new(),
            polys: Vec::new(),
        });
    }
    let minors = candidate_minors(g, d, vars)?;
    if minors.len() < k {
        return Err(SystemError::NoSubsystem(format!(
            "only {} admissible minors for {} variables",
            minors.len(),
            k
        )));
    }

    // Fixed random evaluation point on the squared-distance scale.
    let mut rng = ChaCha8Rng::seed_from_u64(SELECTION_SEED);
    let mean_sq = d.iter().map(|(_, &len)| len * len).sum::<f64>() / d.len() as f64;
    let point: Vec<Complex64> = (0..k)
        .map(|_| Complex64::new(rng.gen_range(0.5..2.0) * mean_sq, 0.0))
        .collect();

    let mut combos = Combos::new(minors.len());
    combos.reset(k);
    while let Some(pick) = combos.next() {
        let mut covered = vec![false; k];
        for &m in pick {
            for &v in &minors[m].covered {
                covered[v] = true;
            }
        }
        if !covered.iter().all(|&c| c) {
            continue;
        }
        let mut jac = DMatrix::<f64>::zeros(k, k);
        for (row, &m) in pick.iter().enumerate() {
            for col in 0..k {
                jac[(row, col)] = minors[m].poly.partial(col).eval(&point).re;
            }
        }
        let svd = jac.svd(false, false);
        let (max_sv, min_sv) = (
            svd.singular_values.max(),
            svd.singular_values.min(),
        );
        if min_sv > JACOBIAN_TOL * max_sv.max(1.0) {
            let polys: Vec<Polynomial> = pick.iter().map(|&m| minors[m].poly.clone()).collect();
            let sys = PolynomialSystem {
                formulation: Formulation::CayleyMenger {
                    pairs: vars.to_vec(),
                },
                var_names: (1..=k).map(|i| format!("x{i}")).collect(),
                polys,
            };
            sys.validate()?;
            return Ok(sys);
        }
    }
    Err(SystemError::NoSubsystem(format!(
        "no nonsingular cover of {} variables among {} admissible minors",
        k,
        minors.len()
    )))
}

/// Vertex sets of the minors a [`cm_subsystem`] call would select, in
/// selection order. Exposed for inspection and testing.
pub fn cm_subsystem_minors(
    g: &Graph,
    d: &LengthAssignment,
    vars: &[(usize, usize)],
) -> Result<Vec<Vec<usize>>, SystemError> {
    if vars.is_empty() {
        return Ok(Vec::new());
    }
    let minors = candidate_minors(g, d, vars)?;
    let k = vars.len();
    let sys = cm_subsystem(g, d, vars)?;
    // Recover which candidate produced each selected polynomial.
    let mut out = Vec::with_capacity(k);
    for poly in &sys.polys {
        let m = minors
            .iter()
            .find(|c| &c.poly == poly)
            .expect("selected polynomial comes from the candidate list");
        out.push(m.points.clone());
    }
    Ok(out)
}

/// Chooses the non-edge variable set for the distance formulation of `g`:
/// the smallest, lexicographically first set of non-edges whose addition
/// makes the graph globally rigid *and* which admits a square determinantal
/// subsystem.
///
/// Both gates are load-bearing. Global rigidity makes the solved distance
/// sets correspond 2 : 1 (reflection) to embeddings, so counts can be
/// reported; without it a spurious small variable set can carry a perfectly
/// nonsingular subsystem whose solutions overcount. Conversely a globally
/// rigid extension may be too small to cover a square system (no admissible
/// minor exists), in which case larger sets must be tried.
pub fn select_cm_variables(
    g: &Graph,
    d: &LengthAssignment,
) -> Result<Vec<(usize, usize)>, SystemError> {
    let n = g.vertex_count();
    if n <= 4 {
        return Ok(Vec::new()); // complete graphs: nothing unknown
    }
    let non_edges = g.non_edges();
    let max_k = (n - 4).min(non_edges.len());
    let mut combos = Combos::new(non_edges.len());
    for k in 1..=max_k {
        combos.reset(k);
        while let Some(idx) = combos.next() {
            let vars: Vec<(usize, usize)> = idx.iter().map(|&i| non_edges[i]).collect();
            let mut extended = g.clone();
            for &(u, v) in &vars {
                extended.add_edge(u, v)?;
            }
            if !geiringer::is_globally_rigid(&extended)? {
                continue;
            }
            if cm_subsystem(g, d, &vars).is_ok() {
                return Ok(vars);
            }
        }
    }
    Err(SystemError::NoSubsystem(format!(
        "no globally rigid variable set of size ≤ {max_k} carries a square subsystem"
    )))
}

/// Result of the alternating-sign embeddability test.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    /// True when every bordered submatrix with 2–4 points satisfies
    /// `(−1)^k det ≥ −ε`.
    pub satisfied: bool,
    /// Vertex subsets whose determinant landed within the ε band around
    /// zero — boundary cases worth surfacing rather than silently passing.
    pub boundary: Vec<Vec<usize>>,
}

fn full_squared_matrix(
    g: &Graph,
    d: &LengthAssignment,
    assignment: &BTreeMap<(usize, usize), f64>,
) -> Result<Vec<Vec<f64>>, SystemError> {
    let n = g.vertex_count();
    let mut sq = vec![vec![0.0; n + 1]; n + 1];
    for i in 1..=n {
        for j in i + 1..=n {
            let value = if g.has_edge(i, j) {
                d.squared(i, j).ok_or(SystemError::MissingDistance(i, j))?
            } else {
                *assignment
                    .get(&(i, j))
                    .or_else(|| assignment.get(&(j, i)))
                    .ok_or(SystemError::MissingDistance(i, j))?
            };
            sq[i][j] = value;
            sq[j][i] = value;
        }
    }
    Ok(sq)
}

fn bordered_det(sq: &[Vec<f64>], points: &[usize]) -> f64 {
    let m = points.len() + 1;
    let mut mat = DMatrix::<f64>::zeros(m, m);
    for r in 1..m {
        mat[(0, r)] = 1.0;
        mat[(r, 0)] = 1.0;
        for c in 1..m {
            mat[(r, c)] = sq[points[r - 1]][points[c - 1]];
        }
    }
    mat.determinant()
}

/// Checks the alternating-sign embeddability inequalities on the complete
/// distance data formed by the graph's edge lengths plus `assignment` values
/// for every non-edge: for each subset of `k = 2, 3, 4` vertices, the
/// bordered determinant must satisfy `(−1)^k det ≥ −ε` with
/// `ε = 10⁻⁹ × max |entry|` of the submatrix.
pub fn evaluate_inequalities(
    g: &Graph,
    d: &LengthAssignment,
    assignment: &BTreeMap<(usize, usize), f64>,
) -> Result<InequalityReport, SystemError> {
    let sq = full_squared_matrix(g, d, assignment)?;
    let mut report = InequalityReport {
        satisfied: true,
        boundary: Vec::new(),
    };
    for k in 2..=4usize {
        if g.vertex_count() < k {
            break;
        }
        let mut combos = Combos::new(g.vertex_count());
        combos.reset(k);
        while let Some(subset) = combos.next() {
            let points: Vec<usize> = subset.iter().map(|i| i + 1).collect();
            let det = bordered_det(&sq, &points);
            let mut max_entry = 1.0f64;
            for &a in &points {
                for &b in &points {
                    max_entry = max_entry.max(sq[a][b].abs());
                }
            }
            let eps = INEQUALITY_TOL * max_entry;
            let signed = if k % 2 == 0 { det } else { -det };
            if signed < -eps {
                report.satisfied = false;
            } else if signed < eps {
                report.boundary.push(points.clone());
            }
        }
    }
    Ok(report)
}

/// Counts the embeddability inequalities that involve the pair `pair` and no
/// other unknown of `g`: subsets of 3 (triangular) or 4 (tetrangular)
/// vertices containing both endpoints whose remaining pairs are all edges.
pub fn single_variable_inequalities(g: &Graph, pair: (usize, usize)) -> (usize, usize) {
    let (u, v) = (pair.0.min(pair.1), pair.0.max(pair.1));
    let mut counts = [0usize; 2];
    for (slot, k) in [(0usize, 3usize), (1, 4)] {
        let mut combos = Combos::new(g.vertex_count());
        combos.reset(k);
        while let Some(subset) = combos.next() {
            let points: Vec<usize> = subset.iter().map(|i| i + 1).collect();
            if !points.contains(&u) || !points.contains(&v) {
                continue;
            }
            let ok = points.iter().enumerate().all(|(a, &p)| {
                points.iter().skip(a + 1).all(|&q| {
                    (p.min(q), p.max(q)) == (u, v) || g.has_edge(p, q)
                })
            });
            if ok {
                counts[slot] += 1;
            }
        }
    }
    (counts[0], counts[1])
}

fn real_roots_of_quadratic(a: f64, b: f64, c: f64, scale: f64) -> Vec<f64> {
    // Coefficients come from second differences of determinants; treat a
    // leading coefficient far below the determinant scale as zero.
    let tiny = 1e-12 * scale.max(1.0);
    if a.abs() < tiny {
        if b.abs() < tiny {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // Numerically stable pairing of the two roots.
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0, -b / a];
    }
    vec![q / a, c / q]
}

/// Extends subsystem variable values to a full distance assignment.
///
/// Each remaining non-edge squared distance appears quadratically in every
/// bordered 6×6 minor whose other fourteen pairs are already known; a true
/// embedding must zero all of them simultaneously. Pairs are resolved
/// iteratively: when at least two such minors exist and share exactly one
/// real root, the pair is committed; when they share none, no embedding with
/// the given values exists and `None` is returned. Pairs whose root sets
/// stay ambiguous are retried after others are committed; if ambiguity never
/// resolves the completion is abandoned (also `None`).
pub fn complete_distances(
    g: &Graph,
    d: &LengthAssignment,
    vars: &[(usize, usize)],
    values: &[f64],
) -> Option<BTreeMap<(usize, usize), f64>> {
    assert_eq!(vars.len(), values.len(), "one value per variable");
    let n = g.vertex_count();
    let mut known: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if g.has_edge(i, j) {
                known.insert((i, j), d.squared(i, j)?);
            }
        }
    }
    for (&(u, v), &val) in vars.iter().zip(values) {
        known.insert((u.min(v), u.max(v)), val);
    }
    let mut pending: Vec<(usize, usize)> = g
        .non_edges()
        .into_iter()
        .filter(|p| !known.contains_key(p))
        .collect();

    let det_at = |known: &BTreeMap<(usize, usize), f64>, points: &[usize], pair: (usize, usize), t: f64| -> f64 {
        let m = points.len() + 1;
        let mut mat = DMatrix::<f64>::zeros(m, m);
        for r in 1..m {
            mat[(0, r)] = 1.0;
            mat[(r, 0)] = 1.0;
            for c in 1..m {
                if r == c {
                    continue;
                }
                let (p, q) = (points[r - 1], points[c - 1]);
                let key = (p.min(q), p.max(q));
                mat[(r, c)] = if key == pair {
                    t
                } else {
                    known[&key]
                };
            }
        }
        mat.determinant()
    };

    for _pass in 0..pending.len().max(1) {
        if pending.is_empty() {
            break;
        }
        let mut progressed = false;
        let mut still_pending = Vec::new();
        'pairs: for &pair in &pending {
            // All 5-vertex sets containing the pair with every other pair known.
            let mut root_sets: Vec<Vec<f64>> = Vec::new();
            let mut combos = Combos::new(n);
            combos.reset(5);
            while let Some(subset) = combos.next() {
                let points: Vec<usize> = subset.iter().map(|i| i + 1).collect();
                if !points.contains(&pair.0) || !points.contains(&pair.1) {
                    continue;
                }
                let usable = points.iter().enumerate().all(|(a, &p)| {
                    points.iter().skip(a + 1).all(|&q| {
                        let key = (p.min(q), p.max(q));
                        key == pair || known.contains_key(&key)
                    })
                });
                if !usable {
                    continue;
                }
                // The determinant is quadratic in the pair's entry; read the
                // coefficients off three evaluations.
                let f0 = det_at(&known, &points, pair, 0.0);
                let f1 = det_at(&known, &points, pair, 1.0);
                let fm = det_at(&known, &points, pair, -1.0);
                let a = 0.5 * (f1 + fm) - f0;
                let b = 0.5 * (f1 - fm);
                let scale = f0.abs().max(f1.abs()).max(fm.abs());
                root_sets.push(real_roots_of_quadratic(a, b, f0, scale));
            }
            if root_sets.len() < 2 {
                still_pending.push(pair);
                continue;
            }
            // Intersect the root sets.
            let mut common: Vec<f64> = root_sets[0].clone();
            for set in &root_sets[1..] {
                common.retain(|&r| {
                    set.iter()
                        .any(|&s| (r - s).abs() <= COMPLETION_ROOT_TOL * r.abs().max(1.0))
                });
            }
            common.dedup_by(|a, b| (*a - *b).abs() <= COMPLETION_ROOT_TOL * a.abs().max(1.0));
            match common.len() {
                0 => return None,
                1 => {
                    known.insert(pair, common[0]);
                    progressed = true;
                }
                _ => {
                    still_pending.push(pair);
                    continue 'pairs;
                }
            }
        }
        pending = still_pending;
        if !progressed {
            break;
        }
    }
    if pending.is_empty() {
        Some(known)
    } else {
        None
    }
}
