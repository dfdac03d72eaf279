//! Newton polytopes and exact mixed volumes in low dimension.
//!
//! The root count of a square sparse system is bounded by the mixed volume
//! of its Newton polytopes (normalized so that `n` unit simplices give 1).
//! It is computed here by inclusion–exclusion over the Euclidean volumes of
//! Minkowski sums of subsets of the polytopes. All geometry is exact:
//! membership tests run a rational phase-1 simplex, and hull volumes are
//! assembled from integer pyramid determinants over a facet decomposition,
//! so the returned integer is a certificate rather than a rounded estimate.
//! Ambient dimension is capped at 4 — exactly the range the distance-matrix
//! subsystems need — because facet enumeration is combinatorial.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Zero};

use geiringer::Combos;

use crate::error::SystemError;
use crate::poly::PolynomialSystem;

type Q = Ratio<i128>;

/// Above this many distinct points a Minkowski sum is reduced to its convex
/// hull vertices before facet enumeration; the threshold only trades work
/// between the simplex tests and the facet scan.
const REDUCTION_THRESHOLD: usize = 40;

/// The Newton polytope of a polynomial: its exponent vectors reduced to the
/// vertices of their convex hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    /// Ambient dimension (number of system variables).
    pub nvars: usize,
    /// Convex-position exponent vectors, sorted lexicographically.
    pub vertices: Vec<Vec<i64>>,
}

impl NewtonPolytope {
    /// True for the polytope of a constant polynomial, which carries no
    /// direction information at all.
    pub fn is_single_point(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// Newton polytopes of all equations of a system, in equation order.
///
/// The origin is adjoined to every support before reduction: the resulting
/// mixed volume then bounds *all* isolated affine roots, not only those with
/// every coordinate nonzero. For the distance subsystems this is a no-op
/// (their minors carry constant terms), but it matters for equations like
/// the magnitude equation `x² + y² + z² − s`, whose support misses the
/// origin.
pub fn newton_polytopes(sys: &PolynomialSystem) -> Vec<NewtonPolytope> {
    sys.polys
        .iter()
        .map(|p| {
            let mut points: Vec<Vec<i64>> = p
                .support()
                .iter()
                .map(|e| e.iter().map(|&x| x as i64).collect())
                .collect();
            points.push(vec![0; p.nvars()]);
            NewtonPolytope {
                nvars: p.nvars(),
                vertices: reduce_to_convex_position(&points),
            }
        })
        .collect()
}

/// Exact feasibility test for `target ∈ conv(generators)` via a phase-1
/// simplex with Bland's rule over exact rationals: feasibility of
/// `Σ λ_j g_j = target`, `Σ λ_j = 1`, `λ ≥ 0`.
fn lp_in_convex_hull(target: &[i64], generators: &[&Vec<i64>]) -> bool {
    let dim = target.len();
    let rows = dim + 1;
    let cols = generators.len();
    if cols == 0 {
        return false;
    }
    // Tableau: generator columns, artificial identity, right-hand side.
    let mut a = vec![vec![Q::zero(); cols]; rows];
    let mut b = vec![Q::zero(); rows];
    for (j, g) in generators.iter().enumerate() {
        for i in 0..dim {
            a[i][j] = Q::from_integer(g[i] as i128);
        }
        a[dim][j] = Q::one();
    }
    for i in 0..dim {
        b[i] = Q::from_integer(target[i] as i128);
    }
    b[dim] = Q::one();
    for i in 0..rows {
        if b[i] < Q::zero() {
            b[i] = -b[i];
            for j in 0..cols {
                a[i][j] = -a[i][j];
            }
        }
    }
    // Artificial variable i starts basic in row i; objective = Σ artificials.
    // Reduced costs for generator columns under that basis:
    let mut cost: Vec<Q> = (0..cols)
        .map(|j| -(0..rows).map(|i| a[i][j]).sum::<Q>())
        .collect();
    let mut obj = -(b.iter().cloned().sum::<Q>());
    let mut basis: Vec<Option<usize>> = (0..rows).map(|_| None).collect(); // None = artificial

    loop {
        // Bland: smallest-index generator column with negative reduced cost.
        let Some(enter) = (0..cols).find(|&j| cost[j] < Q::zero()) else {
            break;
        };
        // Ratio test, Bland tie-break on smallest row index.
        let mut leave: Option<usize> = None;
        let mut best = Q::zero();
        for i in 0..rows {
            if a[i][enter] > Q::zero() {
                let ratio = b[i] / a[i][enter];
                if leave.is_none() || ratio < best {
                    leave = Some(i);
                    best = ratio;
                }
            }
        }
        let Some(r) = leave else {
            // Unbounded phase-1 cannot happen (objective bounded below by 0),
            // but bail out defensively.
            return false;
        };
        // Pivot on (r, enter).
        let piv = a[r][enter];
        for j in 0..cols {
            a[r][j] = a[r][j] / piv;
        }
        b[r] = b[r] / piv;
        for i in 0..rows {
            if i != r && !a[i][enter].is_zero() {
                let f = a[i][enter];
                for j in 0..cols {
                    a[i][j] = a[i][j] - f * a[r][j];
                }
                b[i] = b[i] - f * b[r];
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter];
            for j in 0..cols {
                cost[j] = cost[j] - f * a[r][j];
            }
            obj = obj - f * b[r];
        }
        basis[r] = Some(enter);
    }
    let _ = basis;
    obj.is_zero()
}

/// Reduces a point set to the vertices of its convex hull, exactly: a point
/// is kept iff it is not a convex combination of the others.
pub fn reduce_to_convex_position(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let unique: Vec<Vec<i64>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if unique.len() <= 2 {
        return unique;
    }
    let mut keep = vec![true; unique.len()];
    for i in 0..unique.len() {
        let others: Vec<&Vec<i64>> = unique
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, p)| p)
            .collect();
        if lp_in_convex_hull(&unique[i], &others) {
            keep[i] = false;
        }
    }
    unique
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Determinant of a `d × d` integer matrix by cofactor expansion; `d ≤ 4`
/// and small entries keep this exact in `i128`.
fn int_det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        d => {
            let mut acc = 0i128;
            for col in 0..d {
                if m[0][col] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = (1..d)
                    .map(|r| {
                        (0..d)
                            .filter(|&c| c != col)
                            .map(|c| m[r][c])
                            .collect()
                    })
                    .collect();
                let sign = if col % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][col] * int_det(&minor);
            }
            acc
        }
    }
}

/// Exact affine rank of a point set: the linear rank of the differences to
/// the first point, via fraction-free elimination.
fn affine_rank(points: &[Vec<i64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dim = points[0].len();
    let mut rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| (0..dim).map(|c| (p[c] - points[0][c]) as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col] != 0 {
                let (a, b) = (rows[rank][col], rows[r][col]);
                for c in col..dim {
                    rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A supporting hyperplane found by brute force: canonical integer normal
/// and offset, plus the indices of the points lying on it.
struct Facet {
    normal: Vec<i128>,
    offset: i128,
    on: Vec<usize>,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Enumerates the facet hyperplanes of `conv(points)` in dimension `dim` by
/// scanning all `dim`-subsets spanning a hyperplane and keeping those with
/// every point weakly on one side. Duplicate subsets of the same hyperplane
/// collapse via the canonical (gcd-reduced, sign-normalized) form.
fn enumerate_facets(points: &[Vec<i64>], dim: usize) -> Vec<Facet> {
    let mut seen = BTreeSet::new();
    let mut facets = Vec::new();
    let mut combos = Combos::new(points.len());
    combos.reset(dim);
    while let Some(subset) = combos.next() {
        // Normal via generalized cross product: cofactors of the edge matrix.
        let edges: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| {
                (0..dim)
                    .map(|c| (points[i][c] - points[subset[0]][c]) as i128)
                    .collect()
            })
            .collect();
        let mut normal = vec![0i128; dim];
        for c in 0..dim {
            let minor: Vec<Vec<i128>> = edges
                .iter()
                .map(|row| {
                    (0..dim)
                        .filter(|&cc| cc != c)
                        .map(|cc| row[cc])
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            normal[c] = sign * int_det(&minor);
        }
        if normal.iter().all(|&x| x == 0) {
            continue; // subset affinely dependent, spans no hyperplane
        }
        let mut offset: i128 = (0..dim)
            .map(|c| normal[c] * points[subset[0]][c] as i128)
            .sum();
        let mut g = offset.abs();
        for &x in &normal {
            g = gcd(g, x);
        }
        if g > 1 {
            for x in normal.iter_mut() {
                *x /= g;
            }
            offset /= g;
        }
        if let Some(&first) = normal.iter().find(|&&x| x != 0) {
            if first < 0 {
                for x in normal.iter_mut() {
                    *x = -*x;
                }
                offset = -offset;
            }
        }
        if !seen.insert((normal.clone(), offset)) {
            continue;
        }
        let mut pos = false;
        let mut neg = false;
        let mut on = Vec::new();
        for (idx, p) in points.iter().enumerate() {
            let side: i128 = (0..dim).map(|c| normal[c] * p[c] as i128).sum::<i128>() - offset;
            if side > 0 {
                pos = true;
            } else if side < 0 {
                neg = true;
            } else {
                on.push(idx);
            }
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        facets.push(Facet {
            normal,
            offset,
            on,
        });
    }
    facets
}

/// Triangulates `conv(points)` (given full affine rank `dim`), returning
/// simplices as index tuples: the cone from the lexicographically smallest
/// point over recursively triangulated facets it does not lie on.
fn triangulate(points: &[Vec<i64>], dim: usize) -> Vec<Vec<usize>> {
    if dim == 1 {
        let min = (0..points.len()).min_by_key(|&i| points[i][0]).expect("nonempty");
        let max = (0..points.len()).max_by_key(|&i| points[i][0]).expect("nonempty");
        return vec![vec![min, max]];
    }
    // points are sorted lexicographically, so index 0 is a hull vertex.
    let apex = 0usize;
    let mut simplices = Vec::new();
    for facet in enumerate_facets(points, dim) {
        let apex_side: i128 = (0..dim)
            .map(|c| facet.normal[c] * points[apex][c] as i128)
            .sum::<i128>()
            - facet.offset;
        if apex_side == 0 {
            continue; // cone over this facet is flat
        }
        // Project the facet into dim−1 coordinates by dropping the axis with
        // the largest normal component; along that axis the projection is a
        // bijection on the facet's hyperplane, so convexity and
        // triangulations transfer verbatim.
        let drop = (0..dim)
            .max_by_key(|&c| facet.normal[c].abs())
            .expect("nonzero normal");
        let projected: Vec<Vec<i64>> = facet
            .on
            .iter()
            .map(|&i| {
                (0..dim)
                    .filter(|&c| c != drop)
                    .map(|c| points[i][c])
                    .collect()
            })
            .collect();
        // Re-sort: triangulate expects lexicographic order for its apex pick.
        let mut order: Vec<usize> = (0..projected.len()).collect();
        order.sort_by(|&a, &b| projected[a].cmp(&projected[b]));
        let sorted: Vec<Vec<i64>> = order.iter().map(|&i| projected[i].clone()).collect();
        for sub in triangulate(&sorted, dim - 1) {
            let mut simplex = vec![apex];
            simplex.extend(sub.into_iter().map(|local| facet.on[order[local]]));
            simplices.push(simplex);
        }
    }
    simplices
}

/// `dim! ×` the Euclidean volume of `conv(points)`, exactly. Returns 0 for
/// point sets of deficient affine rank.
fn scaled_volume(points: &[Vec<i64>], dim: usize) -> i128 {
    if points.is_empty() || affine_rank(points) < dim {
        return 0;
    }
    let mut total = 0i128;
    for simplex in triangulate(points, dim) {
        let edges: Vec<Vec<i128>> = simplex[1..]
            .iter()
            .map(|&i| {
                (0..dim)
                    .map(|c| (points[i][c] - points[simplex[0]][c]) as i128)
                    .collect()
            })
            .collect();
        total += int_det(&edges).abs();
    }
    total
}

/// Normalized mixed volume of `n` polytopes in ambient dimension `n ≤ 4`
/// (Bernstein convention: `n` unit simplices → 1), by inclusion–exclusion
/// over exact `n!`-scaled volumes of Minkowski sums of subsets.
pub fn mixed_volume(polytopes: &[NewtonPolytope]) -> Result<u64, SystemError> {
    let n = polytopes.len();
    if n == 0 {
        return Err(SystemError::InvalidArgument(
            "mixed volume of an empty polytope list".into(),
        ));
    }
    if n > 4 {
        return Err(SystemError::UnsupportedDimension(n));
    }
    for p in polytopes {
        if p.nvars != n {
            return Err(SystemError::InvalidArgument(format!(
                "polytope lives in dimension {}, expected {}",
                p.nvars, n
            )));
        }
        if p.vertices.is_empty() {
            return Err(SystemError::InvalidArgument(
                "polytope with empty vertex set".into(),
            ));
        }
    }
    let mut acc: i128 = 0;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut sum: BTreeSet<Vec<i64>> = polytopes[members[0]].vertices.iter().cloned().collect();
        for &m in &members[1..] {
            let mut next = BTreeSet::new();
            for a in &sum {
                for b in &polytopes[m].vertices {
                    let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    next.insert(s);
                }
            }
            sum = next;
        }
        let mut pts: Vec<Vec<i64>> = sum.into_iter().collect();
        if pts.len() > REDUCTION_THRESHOLD {
            pts = reduce_to_convex_position(&pts);
        }
        let vol = scaled_volume(&pts, n);
        if (n - members.len()) % 2 == 0 {
            acc += vol;
        } else {
            acc -= vol;
        }
    }
    let factorial: i128 = (1..=n as i128).product();
    assert!(
        acc >= 0 && acc % factorial == 0,
        "inclusion–exclusion must produce a nonnegative multiple of {n}! (got {acc})"
    );
    Ok((acc / factorial) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn poly_of(points: &[&[i64]], nvars: usize) -> NewtonPolytope {
        NewtonPolytope {
            nvars,
            vertices: reduce_to_convex_position(
                &points.iter().map(|p| p.to_vec()).collect::<Vec<_>>(),
            ),
        }
    }

    fn unit_simplex(n: usize) -> NewtonPolytope {
        let mut pts: Vec<Vec<i64>> = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            pts.push(e);
        }
        NewtonPolytope {
            nvars: n,
            vertices: reduce_to_convex_position(&pts),
        }
    }

    fn unit_cube(n: usize) -> NewtonPolytope {
        let pts: Vec<Vec<i64>> = (0..n)
            .map(|_| [0i64, 1])
            .multi_cartesian_product()
            .collect();
        NewtonPolytope {
            nvars: n,
            vertices: reduce_to_convex_position(&pts),
        }
    }

    #[test]
    fn magnitude_equation_polytope() {
        // x² + y² + z² − s, with the origin adjoined for the affine bound.
        let mut p = crate::poly::Polynomial::zero(4);
        for v in 0..3 {
            let mut e = vec![0u32; 4];
            e[v] = 2;
            p.add_term(&e, num_complex::Complex64::new(1.0, 0.0));
        }
        p.add_term(&[0, 0, 0, 1], num_complex::Complex64::new(-1.0, 0.0));
        let sys = crate::poly::PolynomialSystem {
            formulation: crate::poly::Formulation::Sphere { triangle: (1, 2, 3) },
            var_names: ["x", "y", "z", "s"].map(String::from).to_vec(),
            polys: vec![p.clone(), p.clone(), p.clone(), p],
        };
        let polys = newton_polytopes(&sys);
        let mut want: Vec<Vec<i64>> = vec![
            vec![2, 0, 0, 0],
            vec![0, 2, 0, 0],
            vec![0, 0, 2, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
        ];
        want.sort();
        assert_eq!(polys[0].vertices, want);
        assert!(!polys[0].is_single_point());
    }

    #[test]
    fn constant_polynomial_polytope_is_a_point() {
        let one = crate::poly::Polynomial::constant(2, num_complex::Complex64::new(3.0, 0.0));
        let sys = crate::poly::PolynomialSystem {
            formulation: crate::poly::Formulation::CayleyMenger { pairs: vec![] },
            var_names: ["a", "b"].map(String::from).to_vec(),
            polys: vec![one.clone(), one],
        };
        let polys = newton_polytopes(&sys);
        assert!(polys.iter().all(NewtonPolytope::is_single_point));
    }

    #[test]
    fn convex_reduction_drops_boundary_midpoint() {
        // (1,1) is the midpoint of (2,0) and (0,2): on the hull boundary but
        // not a vertex, so the exact test must drop it.
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1]];
        let reduced = reduce_to_convex_position(&pts);
        assert_eq!(reduced, vec![vec![0, 0], vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn convex_reduction_keeps_true_vertices() {
        let pts = vec![
            vec![0, 0, 0, 0],
            vec![2, 0, 0, 0],
            vec![0, 2, 0, 0],
            vec![0, 0, 2, 0],
            vec![0, 0, 0, 1],
        ];
        assert_eq!(reduce_to_convex_position(&pts).len(), 5);
    }

    #[test]
    fn bernstein_normalization() {
        let simplices: Vec<NewtonPolytope> = (0..3).map(|_| unit_simplex(3)).collect();
        assert_eq!(mixed_volume(&simplices).unwrap(), 1);
        let squares: Vec<NewtonPolytope> = (0..2).map(|_| unit_cube(2)).collect();
        assert_eq!(mixed_volume(&squares).unwrap(), 2);
        let cubes: Vec<NewtonPolytope> = (0..3).map(|_| unit_cube(3)).collect();
        assert_eq!(mixed_volume(&cubes).unwrap(), 6);
    }

    #[test]
    fn four_dimensional_simplices() {
        let simplices: Vec<NewtonPolytope> = (0..4).map(|_| unit_simplex(4)).collect();
        assert_eq!(mixed_volume(&simplices).unwrap(), 1);
    }

    #[test]
    fn degenerate_directions_give_zero() {
        // Two parallel segments span no area.
        let seg = poly_of(&[&[0, 0], &[1, 0]], 2);
        assert_eq!(mixed_volume(&[seg.clone(), seg]).unwrap(), 0);
    }

    #[test]
    fn crossing_segments_give_one() {
        let horizontal = poly_of(&[&[0, 0], &[1, 0]], 2);
        let vertical = poly_of(&[&[0, 0], &[0, 1]], 2);
        assert_eq!(mixed_volume(&[horizontal, vertical]).unwrap(), 1);
    }

    #[test]
    fn bezout_via_dense_supports() {
        // Dense degree-(2,3) supports reproduce the Bézout number 6 in 2D.
        let dense = |deg: i64| {
            let pts: Vec<Vec<i64>> = (0..=deg)
                .flat_map(|i| (0..=(deg - i)).map(move |j| vec![i, j]))
                .collect();
            NewtonPolytope {
                nvars: 2,
                vertices: reduce_to_convex_position(&pts),
            }
        };
        assert_eq!(mixed_volume(&[dense(2), dense(3)]).unwrap(), 6);
    }

    #[test]
    fn rejects_high_dimension() {
        let simplices: Vec<NewtonPolytope> = (0..5).map(|_| unit_simplex(5)).collect();
        assert!(matches!(
            mixed_volume(&simplices),
            Err(SystemError::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn volume_of_shifted_sets_is_translation_invariant() {
        let base = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let shifted: Vec<Vec<i64>> = base
            .iter()
            .map(|p| p.iter().map(|&x| x + 3).collect())
            .collect();
        assert_eq!(scaled_volume(&base, 3), 1);
        let mut sorted = shifted.clone();
        sorted.sort();
        assert_eq!(scaled_volume(&sorted, 3), 1);
    }
}
