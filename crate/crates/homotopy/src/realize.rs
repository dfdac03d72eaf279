//! Coordinate recovery from a complete distance matrix by classical
//! scaling: double centering, eigendecomposition, and the top three
//! nonnegative eigenvalue directions.

use nalgebra::DMatrix;

use crate::error::SolverError;

/// Relative tolerance for rank and negativity decisions on the Gram
/// spectrum, and for the final distance verification.
const REALIZE_TOL: f64 = 1e-6;

/// Recovers spatial coordinates from an `n × n` matrix of pairwise
/// distances (zero diagonal, symmetric).
///
/// The Gram matrix of the centered configuration is `−½ J D⁽²⁾ J` with `J`
/// the centering projector; its spectrum decides embeddability. More than
/// three eigenvalues above tolerance (distance-matrix rank beyond the
/// spatial bound) or a negative eigenvalue beyond tolerance means no point
/// set in space has these distances. Otherwise coordinates are
/// `V₃ · diag(√λ₃)`, verified against the input to 10⁻⁶ relative.
pub fn realize_from_distances(distances: &[Vec<f64>]) -> Result<Vec<[f64; 3]>, SolverError> {
    let n = distances.len();
    if n == 0 {
        return Err(SolverError::InvalidArgument("empty distance matrix".into()));
    }
    for (i, row) in distances.iter().enumerate() {
        if row.len() != n {
            return Err(SolverError::InvalidArgument(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if row[i].abs() > 1e-12 {
            return Err(SolverError::InvalidArgument(format!(
                "diagonal entry {i} is {}, expected 0",
                row[i]
            )));
        }
        for j in 0..n {
            let (a, b) = (row[j], distances[j][i]);
            if !a.is_finite() || a < 0.0 {
                return Err(SolverError::InvalidArgument(format!(
                    "distance ({i}, {j}) is {a}"
                )));
            }
            if (a - b).abs() > 1e-9 * (1.0 + a.abs()) {
                return Err(SolverError::InvalidArgument(format!(
                    "distance matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }

    // Double centering: G = −½ J D⁽²⁾ J, J = I − 11ᵀ/n.
    let sq = DMatrix::from_fn(n, n, |i, j| distances[i][j] * distances[i][j]);
    let row_mean: Vec<f64> = (0..n).map(|i| sq.row(i).sum() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let gram = DMatrix::from_fn(n, n, |i, j| {
        -0.5 * (sq[(i, j)] - row_mean[i] - row_mean[j] + grand)
    });

    let eig = gram.symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let tol = REALIZE_TOL * scale.max(1.0);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());

    if let Some(&min_idx) = order.last() {
        let min_eig = eig.eigenvalues[min_idx];
        if min_eig < -tol {
            return Err(SolverError::NotEmbeddable(format!(
                "Gram matrix has negative eigenvalue {min_eig:.6e}"
            )));
        }
    }
    let rank = order.iter().filter(|&&i| eig.eigenvalues[i] > tol).count();
    if rank > 3 {
        return Err(SolverError::NotEmbeddable(format!(
            "distance data needs {rank} dimensions"
        )));
    }

    let mut points = vec![[0.0f64; 3]; n];
    for (axis, &idx) in order.iter().take(3).enumerate() {
        let lambda = eig.eigenvalues[idx].max(0.0);
        let s = lambda.sqrt();
        for (i, p) in points.iter_mut().enumerate() {
            p[axis] = s * eig.eigenvectors[(i, idx)];
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            let dx = points[i][0] - points[j][0];
            let dy = points[i][1] - points[j][1];
            let dz = points[i][2] - points[j][2];
            let got = (dx * dx + dy * dy + dz * dz).sqrt();
            let want = distances[i][j];
            if (got - want).abs() > REALIZE_TOL * (1.0 + want) {
                return Err(SolverError::NotEmbeddable(format!(
                    "recovered distance ({i}, {j}) is {got:.9}, input {want:.9}"
                )));
            }
        }
    }
    Ok(points)
}
