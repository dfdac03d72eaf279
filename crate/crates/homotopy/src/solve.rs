//! Solution sets and the two solve strategies: total-degree continuation
//! from scratch and parameter continuation from a solved neighbor instance.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use distance_systems::{Formulation, PolynomialSystem};

use crate::compiled::CompiledSystem;
use crate::error::SolverError;
use crate::track::{newton_refine, PathOutcome, Schedule, Tracker};

/// Componentwise imaginary-part bound for classifying a refined solution as
/// real.
pub const REAL_TOL: f64 = 1e-6;
/// Upper edge of the ambiguous near-real band; solutions inside
/// `(REAL_TOL, NEAR_REAL_TOL)` are counted nonreal and logged.
pub const NEAR_REAL_TOL: f64 = 1e-4;
/// Relative Euclidean distance under which two endpoints are the same root.
pub const DEDUPE_TOL: f64 = 1e-8;
/// Path failure fraction above which the solve retries with a fresh γ.
const FAILURE_RATE_LIMIT: f64 = 0.01;
/// Total-degree retries before giving up.
const MAX_ATTEMPTS: usize = 3;

/// One refined endpoint.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Values in the system's variable order.
    pub values: Vec<Complex64>,
    /// Max-norm residual after refinement.
    pub residual: f64,
    /// More than one path landed here (root of multiplicity > 1, or a
    /// cluster unresolved at the dedupe tolerance).
    pub multiple: bool,
    /// All imaginary parts within [`REAL_TOL`] after refinement.
    pub is_real: bool,
    /// Refinement diverged; excluded from solution sets.
    pub failed: bool,
}

/// Where a solution set came from: enough to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// Formulation summary, e.g. `sphere(1,2,3)` or `cm[(1,7),(2,4),(2,5)]`.
    pub formulation: String,
    /// Hash of the target system's coefficients (a stand-in for the length
    /// data that produced them).
    pub lengths_hash: u64,
    /// RNG seed for the homotopy constants.
    pub seed: u64,
}

/// Deduplicated, classified, deterministically ordered solutions of one
/// square system.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub complex_count: usize,
    pub real_count: usize,
    pub provenance: Provenance,
    /// Path-failure, retry, and near-real notes accumulated during the
    /// solve.
    pub warnings: Vec<String>,
}

impl SolutionSet {
    /// JSON dump: one record per solution with values as `[re, im]` pairs.
    pub fn to_json(&self) -> String {
        let solutions: Vec<serde_json::Value> = self
            .solutions
            .iter()
            .map(|s| {
                serde_json::json!({
                    "values": s.values.iter().map(|c| vec![c.re, c.im]).collect::<Vec<_>>(),
                    "residual": s.residual,
                    "real": s.is_real,
                    "multiple": s.multiple,
                })
            })
            .collect();
        serde_json::json!({
            "formulation": self.provenance.formulation,
            "lengths_hash": format!("{:016x}", self.provenance.lengths_hash),
            "seed": self.provenance.seed,
            "complex_count": self.complex_count,
            "real_count": self.real_count,
            "warnings": self.warnings,
            "solutions": solutions,
        })
        .to_string()
    }
}

pub(crate) fn formulation_label(sys: &PolynomialSystem) -> String {
    match &sys.formulation {
        Formulation::Sphere {
            triangle: (a, b, c),
        } => format!("sphere({a},{b},{c})"),
        Formulation::CayleyMenger { pairs } => {
            let body: Vec<String> = pairs.iter().map(|(u, v)| format!("({u},{v})")).collect();
            format!("cm[{}]", body.join(","))
        }
    }
}

pub(crate) fn coefficient_hash(sys: &PolynomialSystem) -> u64 {
    let mut h = DefaultHasher::new();
    for p in &sys.polys {
        for (exps, c) in p.terms() {
            exps.hash(&mut h);
            c.re.to_bits().hash(&mut h);
            c.im.to_bits().hash(&mut h);
        }
    }
    h.finish()
}

/// Solves a square system by tracking all `∏ degᵢ` paths of the
/// total-degree homotopy `H = (1−τ)·γ·(xᵢ^{dᵢ} − 1) + τ·target`.
///
/// Divergent paths are the expected Bézout excess and are dropped silently;
/// failed paths beyond a 1% rate trigger a retry with a fresh random γ
/// (logged), and persistent failure is an error.
pub fn solve_total_degree(sys: &PolynomialSystem, seed: u64) -> Result<SolutionSet, SolverError> {
    sys.validate()?;
    if sys.degrees().contains(&0) {
        return Err(SolverError::InvalidArgument(
            "total-degree start needs every equation nonconstant".into(),
        ));
    }
    let total: usize = sys.degrees().iter().map(|&d| d as usize).product();
    if total > 5_000_000 {
        return Err(SolverError::InvalidArgument(format!(
            "total degree {total} is beyond this solver's budget"
        )));
    }
    let target = CompiledSystem::from_system(sys);
    let (start, start_sols) = CompiledSystem::total_degree_start(&target.degrees);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut warnings = Vec::new();
    for attempt in 0..MAX_ATTEMPTS {
        let gamma = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let mut tracker = Tracker::new(&start, &target, Schedule::Convex { gamma });
        let mut endpoints = Vec::new();
        let mut failed = 0usize;
        for s in &start_sols {
            match tracker.track(s) {
                PathOutcome::Converged { values, residual } => endpoints.push((values, residual)),
                PathOutcome::Diverged => {}
                PathOutcome::Failed => failed += 1,
            }
        }
        let rate = failed as f64 / total as f64;
        if rate <= FAILURE_RATE_LIMIT {
            if failed > 0 {
                warnings.push(format!(
                    "{failed} of {total} paths failed (within tolerance)"
                ));
            }
            return Ok(assemble(
                endpoints,
                Provenance {
                    formulation: formulation_label(sys),
                    lengths_hash: coefficient_hash(sys),
                    seed,
                },
                warnings,
            ));
        }
        warnings.push(format!(
            "attempt {}: {failed} of {total} paths failed; retrying with new γ",
            attempt + 1
        ));
    }
    Err(SolverError::SolverFailure(format!(
        "path failure rate stayed above {}% across {MAX_ATTEMPTS} homotopy constants",
        FAILURE_RATE_LIMIT * 100.0
    )))
}

/// Tracks the known solutions of `sys_from` to `sys_to` along a coefficient
/// homotopy on the Möbius arc. Both systems must share variables (same
/// graph and formulation, different lengths). The count may drop when the
/// target is non-generic and paths diverge.
pub fn track_parameter_homotopy(
    sys_from: &PolynomialSystem,
    solutions_from: &SolutionSet,
    sys_to: &PolynomialSystem,
    seed: u64,
) -> Result<SolutionSet, SolverError> {
    sys_from.validate()?;
    sys_to.validate()?;
    if sys_from.var_names != sys_to.var_names {
        return Err(SolverError::InvalidArgument(
            "parameter homotopy endpoints must share the variable list".into(),
        ));
    }
    let from = CompiledSystem::from_system(sys_from);
    let to = CompiledSystem::from_system(sys_to);
    let total = solutions_from.solutions.len();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut warnings = Vec::new();
    for attempt in 0..MAX_ATTEMPTS {
        // Keep γ away from the real axis so the arc actually detours.
        let gamma = Complex64::from_polar(
            1.0,
            rng.gen_range(0.15..std::f64::consts::PI - 0.15)
                * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
        );
        let mut tracker = Tracker::new(&from, &to, Schedule::Moebius { gamma });
        let mut endpoints = Vec::new();
        let mut failed = 0usize;
        for s in &solutions_from.solutions {
            match tracker.track(&s.values) {
                PathOutcome::Converged { values, residual } => endpoints.push((values, residual)),
                PathOutcome::Diverged => {}
                PathOutcome::Failed => failed += 1,
            }
        }
        let rate = if total == 0 {
            0.0
        } else {
            failed as f64 / total as f64
        };
        if rate <= FAILURE_RATE_LIMIT {
            if failed > 0 {
                warnings.push(format!(
                    "{failed} of {total} paths failed (within tolerance)"
                ));
            }
            return Ok(assemble(
                endpoints,
                Provenance {
                    formulation: formulation_label(sys_to),
                    lengths_hash: coefficient_hash(sys_to),
                    seed,
                },
                warnings,
            ));
        }
        warnings.push(format!(
            "attempt {}: {failed} of {total} parameter paths failed; retrying with new γ",
            attempt + 1
        ));
    }
    Err(SolverError::SolverFailure(
        "parameter homotopy kept failing paths across retries".into(),
    ))
}

/// Newton-polishes one solution against the system; divergence marks the
/// solution failed instead of erroring.
pub fn refine(sol: &Solution, sys: &PolynomialSystem) -> Solution {
    let compiled = CompiledSystem::from_system(sys);
    let mut values = sol.values.clone();
    let (residual, ok) = newton_refine(&compiled, &mut values, 50);
    let is_real = ok && values.iter().all(|c| c.im.abs() <= REAL_TOL);
    Solution {
        values,
        residual,
        multiple: sol.multiple,
        is_real,
        failed: !ok,
    }
}

/// Dedupes, classifies, and deterministically orders refined endpoints.
fn assemble(
    endpoints: Vec<(Vec<Complex64>, f64)>,
    provenance: Provenance,
    mut warnings: Vec<String>,
) -> SolutionSet {
    // Cluster endpoints at the relative dedupe tolerance.
    let mut clusters: Vec<(Vec<Complex64>, f64, usize)> = Vec::new();
    for (values, residual) in endpoints {
        let mut merged = false;
        for (rep, res, count) in clusters.iter_mut() {
            let dist: f64 = rep
                .iter()
                .zip(&values)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let scale: f64 = rep.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if dist <= DEDUPE_TOL * scale.max(1.0) {
                *count += 1;
                if residual < *res {
                    *rep = values.clone();
                    *res = residual;
                }
                merged = true;
                break;
            }
        }
        if !merged {
            clusters.push((values, residual, 1));
        }
    }

    let mut solutions: Vec<Solution> = clusters
        .into_iter()
        .map(|(values, residual, count)| {
            let im_max = values.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
            Solution {
                is_real: im_max <= REAL_TOL,
                multiple: count > 1,
                values,
                residual,
                failed: false,
            }
        })
        .collect();

    // Deterministic order: lexicographic by rounded coordinates.
    let key = |s: &Solution| -> Vec<(i64, i64)> {
        s.values
            .iter()
            .map(|c| ((c.re / 1e-9).round() as i64, (c.im / 1e-9).round() as i64))
            .collect()
    };
    solutions.sort_by_key(key);

    for (i, s) in solutions.iter().enumerate() {
        let im_max = s.values.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        if im_max > REAL_TOL && im_max < NEAR_REAL_TOL {
            warnings.push(format!(
                "solution {i} is near-real (max |Im| = {im_max:.3e}); counted nonreal"
            ));
        }
    }

    let complex_count = solutions.len();
    let real_count = solutions.iter().filter(|s| s.is_real).count();
    SolutionSet {
        solutions,
        complex_count,
        real_count,
        provenance,
        warnings,
    }
}
