//! Embedding counting: wires graph + lengths through a formulation, the
//! path tracker, and (for the determinantal route) the embeddability
//! filter, and reports complex/real counts.

use std::collections::BTreeMap;

use geiringer::Graph;

use distance_systems::{
    build_sphere_system, cm_subsystem, complete_distances, evaluate_inequalities, mixed_volume,
    newton_polytopes, select_cm_variables, LengthAssignment,
};

use crate::error::SolverError;
use crate::solve::{solve_total_degree, SolutionSet};

/// Which polynomial model of the embedding problem to count with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulationKind {
    /// Coordinate equations with a pinned triangle; solutions are
    /// embeddings modulo the reflection fixing the triangle's plane.
    Sphere,
    /// Determinantal equations in unknown squared distances; each solved
    /// distance set stands for a reflection pair of embeddings.
    Cm,
}

/// Complex/real embedding counts together with the choices that produced
/// them.
#[derive(Debug, Clone)]
pub struct EmbeddingCounts {
    pub complex: usize,
    pub real: usize,
    /// Pinned triangle (coordinate formulation only).
    pub triangle: Option<(usize, usize, usize)>,
    /// Non-edge variables (determinantal formulation only).
    pub cm_vars: Option<Vec<(usize, usize)>>,
    /// Solver warnings plus counting-stage notes.
    pub warnings: Vec<String>,
}

/// Picks the pinned triangle with the smallest total-degree path count;
/// ties break lexicographically. All triangles yield the same number of
/// solutions, so the cheapest one is always the right one.
pub fn default_triangle(g: &Graph) -> Result<(usize, usize, usize), SolverError> {
    let mut best: Option<((usize, usize, usize), u128)> = None;
    for t in g.triangles() {
        let mut product: u128 = 1;
        // One quadratic magnitude equation per free vertex, one quadratic
        // per free–free edge; pinned–free edge equations are linear.
        let free = g.vertex_count() - 3;
        product <<= free;
        for (a, b) in g.edges() {
            let in_triangle = |v: usize| v == t.0 || v == t.1 || v == t.2;
            if !in_triangle(a) && !in_triangle(b) {
                product <<= 1;
            }
        }
        match &best {
            Some((_, p)) if *p <= product => {}
            _ => best = Some((t, product)),
        }
    }
    best.map(|(t, _)| t)
        .ok_or_else(|| SolverError::NotFound("graph has no triangle to pin".into()))
}

/// Counts complex and real embeddings of `g` with edge lengths `d`.
///
/// The coordinate route counts tracker endpoints directly (real = all
/// imaginary parts below tolerance). The determinantal route counts solved
/// distance sets, doubles for the reflection, and accepts a real root as an
/// embedding only when the remaining non-edge distances complete
/// consistently and the alternating-sign inequalities hold.
pub fn count_embeddings(
    g: &Graph,
    d: &LengthAssignment,
    kind: FormulationKind,
    triangle: Option<(usize, usize, usize)>,
    seed: u64,
) -> Result<EmbeddingCounts, SolverError> {
    match kind {
        FormulationKind::Sphere => {
            let t = match triangle {
                Some(t) => t,
                None => default_triangle(g)?,
            };
            let sys = build_sphere_system(g, d, t)?;
            let sols = solve_total_degree(&sys, seed)?;
            Ok(EmbeddingCounts {
                complex: sols.complex_count,
                real: sols.real_count,
                triangle: Some(t),
                cm_vars: None,
                warnings: sols.warnings,
            })
        }
        FormulationKind::Cm => {
            let vars = select_cm_variables(g, d)?;
            let sys = cm_subsystem(g, d, &vars)?;
            if sys.is_empty() {
                // Nothing unknown: the complete graph case, one reflection
                // pair if embeddable at all.
                return Ok(EmbeddingCounts {
                    complex: 2,
                    real: 2,
                    triangle: None,
                    cm_vars: Some(vars),
                    warnings: Vec::new(),
                });
            }
            let sols = solve_total_degree(&sys, seed)?;
            let (real, mut warnings) = count_cm_real(g, d, &vars, &sols);
            warnings.splice(0..0, sols.warnings.iter().cloned());
            Ok(EmbeddingCounts {
                complex: 2 * sols.complex_count,
                real: 2 * real,
                triangle: None,
                cm_vars: Some(vars),
                warnings,
            })
        }
    }
}

/// Real roots of the distance subsystem that extend to full embeddable
/// distance matrices. Returns the count (pre-doubling) and notes.
pub(crate) fn count_cm_real(
    g: &Graph,
    d: &LengthAssignment,
    vars: &[(usize, usize)],
    sols: &SolutionSet,
) -> (usize, Vec<String>) {
    let mut real = 0usize;
    let mut warnings = Vec::new();
    for (i, s) in sols.solutions.iter().enumerate() {
        if !s.is_real {
            continue;
        }
        let values: Vec<f64> = s.values.iter().map(|c| c.re).collect();
        if values.iter().any(|&v| v <= 0.0) {
            continue; // squared distances must be positive
        }
        let Some(full) = complete_distances(g, d, vars, &values) else {
            continue;
        };
        let assignment: BTreeMap<(usize, usize), f64> = full
            .into_iter()
            .filter(|((u, v), _)| !g.has_edge(*u, *v))
            .collect();
        match evaluate_inequalities(g, d, &assignment) {
            Ok(report) => {
                if report.satisfied {
                    real += 1;
                    if !report.boundary.is_empty() {
                        warnings.push(format!(
                            "root {i}: {} embeddability determinants within tolerance of zero",
                            report.boundary.len()
                        ));
                    }
                }
            }
            Err(e) => warnings.push(format!("root {i}: inequality check failed: {e}")),
        }
    }
    (real, warnings)
}

/// Minimum over pinned triangles of the coordinate system's root-count
/// bound: the exact mixed volume when the system is small enough for the
/// polytope pipeline, otherwise the tracked complex count (equal to it for
/// generic lengths).
pub fn min_mixed_volume_over_triangles(
    g: &Graph,
    d: &LengthAssignment,
    seed: u64,
) -> Result<u64, SolverError> {
    let mut best: Option<u64> = None;
    let triangles = g.triangles();
    if triangles.is_empty() {
        return Err(SolverError::NotFound("graph has no triangle to pin".into()));
    }
    for t in triangles {
        let sys = build_sphere_system(g, d, t)?;
        let value = if sys.nvars() <= 4 {
            mixed_volume(&newton_polytopes(&sys))?
        } else {
            solve_total_degree(&sys, seed)?.complex_count as u64
        };
        best = Some(match best {
            Some(b) => b.min(value),
            None => value,
        });
    }
    Ok(best.expect("at least one triangle was scanned"))
}
