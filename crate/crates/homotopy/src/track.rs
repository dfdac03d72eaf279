//! The predictor–corrector path tracker.
//!
//! A path follows `H(x, τ) = a(τ)·F(x) + b(τ)·G(x) = 0` from a known root of
//! `F` at `τ = 0` to a root of the target `G` at `τ = 1`. The predictor is a
//! 4th-order Runge–Kutta step on the Davidenko equation
//! `J_H · ẋ = −∂H/∂τ`; each predicted point is pulled back onto the path by
//! a few Newton corrections at frozen τ. Step size adapts: rejected
//! corrections halve it, a streak of accepted steps grows it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::compiled::CompiledSystem;

/// τ beyond which endgame stepping and norm sampling are in force.
const ENDGAME_START: f64 = 0.9;
/// Tracking stops at τ = 1 − this; endpoint refinement covers the rest.
/// Stopping short keeps the pole of a diverging path from swallowing the
/// step size before the norm samples show what the path is doing.
const ENDGAME_FLOOR: f64 = 1e-10;
/// Norm samples kept for the divergence verdict (trailing window, so a
/// path that settles after a mid-endgame detour is judged on its tail).
const SAMPLE_WINDOW: usize = 5;

/// Tracker tolerances and step-size policy.
#[derive(Debug, Clone)]
pub struct TrackSettings {
    /// Largest admissible τ step.
    pub max_step: f64,
    /// First τ step attempted.
    pub initial_step: f64,
    /// Below this step size a path is declared failed.
    pub min_step: f64,
    /// Max-norm bound beyond which a path is declared divergent.
    pub divergence: f64,
    /// Newton corrections applied after each predictor step.
    pub corrector_iters: usize,
    /// Relative correction size that counts as converged.
    pub corrector_tol: f64,
    /// Accepted steps in a row before the step size grows.
    pub growth_streak: usize,
    /// Newton iteration cap for endpoint refinement.
    pub refine_iters: usize,
    /// Hard cap on predictor steps (accepted or rejected) per path.
    pub max_steps: usize,
}

impl Default for TrackSettings {
    fn default() -> Self {
        TrackSettings {
            max_step: 0.1,
            initial_step: 0.05,
            min_step: 1e-14,
            divergence: 1e8,
            corrector_iters: 3,
            corrector_tol: 1e-9,
            growth_streak: 4,
            refine_iters: 50,
            max_steps: 10_000,
        }
    }
}

/// How the start and target systems are blended along τ.
#[derive(Debug, Clone, Copy)]
pub enum Schedule {
    /// `H = (1−τ)·γ·F + τ·G`: the total-degree homotopy with a random
    /// complex constant keeping the path off the discriminant.
    Convex { gamma: Complex64 },
    /// `H = (1−α)·F + α·G` with the Möbius arc `α(τ) = γτ / (1 + (γ−1)τ)`:
    /// a parameter homotopy between same-support systems that detours
    /// through complex coefficients instead of crossing the real
    /// discriminant on a straight line.
    Moebius { gamma: Complex64 },
}

impl Schedule {
    /// Blend weights `(a, b)` and their τ-derivatives at `t`.
    fn weights(&self, t: f64) -> (Complex64, Complex64, Complex64, Complex64) {
        match *self {
            Schedule::Convex { gamma } => {
                let one = Complex64::new(1.0, 0.0);
                (gamma * (1.0 - t), Complex64::new(t, 0.0), -gamma, one)
            }
            Schedule::Moebius { gamma } => {
                let one = Complex64::new(1.0, 0.0);
                let denom = one + (gamma - one) * t;
                let alpha = gamma * t / denom;
                let dalpha = gamma / (denom * denom);
                (one - alpha, alpha, -dalpha, dalpha)
            }
        }
    }
}

/// Endpoint of one tracked path.
#[derive(Debug, Clone)]
pub enum PathOutcome {
    /// Finite endpoint, refined against the target system.
    Converged {
        values: Vec<Complex64>,
        residual: f64,
    },
    /// Left the divergence radius: a Bézout-excess path going to infinity.
    Diverged,
    /// Step size collapsed or linear algebra broke down.
    Failed,
}

/// Reusable buffers plus the pair of systems one homotopy tracks between.
pub struct Tracker<'a> {
    from: &'a CompiledSystem,
    to: &'a CompiledSystem,
    schedule: Schedule,
    pub settings: TrackSettings,
    // Scratch space, reused across paths.
    jac: DMatrix<Complex64>,
    fval: Vec<Complex64>,
    gval: Vec<Complex64>,
    rhs: DVector<Complex64>,
}

impl<'a> Tracker<'a> {
    pub fn new(from: &'a CompiledSystem, to: &'a CompiledSystem, schedule: Schedule) -> Self {
        assert_eq!(from.nvars, to.nvars, "homotopy endpoints must agree");
        let n = from.nvars;
        Tracker {
            from,
            to,
            schedule,
            settings: TrackSettings::default(),
            jac: DMatrix::zeros(n, n),
            fval: vec![Complex64::new(0.0, 0.0); n],
            gval: vec![Complex64::new(0.0, 0.0); n],
            rhs: DVector::zeros(n),
        }
    }

    /// `J_H(x, t)` into the scratch matrix.
    fn blended_jacobian(&mut self, x: &[Complex64], t: f64) {
        let (a, b, _, _) = self.schedule.weights(t);
        let n = self.to.nvars;
        for r in 0..n {
            for c in 0..n {
                self.jac[(r, c)] =
                    a * self.from.jac_entry(r, c, x) + b * self.to.jac_entry(r, c, x);
            }
        }
    }

    /// Davidenko right-hand side `ẋ = −J_H⁻¹ · ∂H/∂τ`; `None` on a singular
    /// Jacobian.
    fn tangent(&mut self, x: &[Complex64], t: f64) -> Option<DVector<Complex64>> {
        let (_, _, da, db) = self.schedule.weights(t);
        self.from.eval_into(x, &mut self.fval);
        self.to.eval_into(x, &mut self.gval);
        for i in 0..self.to.nvars {
            self.rhs[i] = -(da * self.fval[i] + db * self.gval[i]);
        }
        self.blended_jacobian(x, t);
        self.jac.clone().lu().solve(&self.rhs)
    }

    /// One Newton correction at frozen τ; returns the relative step size, or
    /// `None` on a singular Jacobian.
    fn correct(&mut self, x: &mut [Complex64], t: f64) -> Option<f64> {
        let (a, b, _, _) = self.schedule.weights(t);
        self.from.eval_into(x, &mut self.fval);
        self.to.eval_into(x, &mut self.gval);
        for i in 0..self.to.nvars {
            self.rhs[i] = -(a * self.fval[i] + b * self.gval[i]);
        }
        self.blended_jacobian(x, t);
        let delta = self.jac.clone().lu().solve(&self.rhs)?;
        let mut xnorm = 0.0f64;
        for (xi, d) in x.iter_mut().zip(delta.iter()) {
            *xi += d;
            xnorm = xnorm.max(xi.norm());
        }
        Some(delta.norm() / (1.0 + xnorm))
    }

    /// Newton-refines `x` against the target system alone. Returns the final
    /// residual and whether the refinement target was met.
    pub fn refine_endpoint(&mut self, x: &mut [Complex64]) -> (f64, bool) {
        newton_refine(self.to, x, self.settings.refine_iters)
    }

    /// Tracks a single path from a start solution at τ = 0.
    ///
    /// Inside the endgame region (τ > 0.9) the step size is capped at a
    /// quarter of the remaining distance, so every path records its max-norm
    /// at a geometric ladder of approach times. A norm still growing like a
    /// power of 1/(1−τ) across those samples is the signature of a root at
    /// infinity — the one signal that separates the Bézout excess from
    /// genuine endpoints, since close to infinity every local test
    /// (residual, Newton step) looks convergent in the affine chart. Paths
    /// whose step size collapses get the same classification, then a plain
    /// Newton rescue against the target before counting as failed.
    pub fn track(&mut self, start: &[Complex64]) -> PathOutcome {
        let mut x = start.to_vec();
        let mut t = 0.0f64;
        let mut h = self.settings.initial_step;
        let mut streak = 0usize;
        let mut steps = 0usize;
        // (1−τ, max-norm) at each halving of the remaining distance.
        let mut samples: Vec<(f64, f64)> = Vec::new();
        let mut xnext = vec![Complex64::new(0.0, 0.0); x.len()];

        while t < 1.0 - ENDGAME_FLOOR {
            steps += 1;
            if steps > self.settings.max_steps {
                return self.stall(&mut x, &samples);
            }
            let mut step = h.min(1.0 - t);
            if t > ENDGAME_START {
                step = step.min(((1.0 - t) * 0.25).max(ENDGAME_FLOOR));
            }

            // RK4 predictor on the Davidenko equation.
            let predicted = (|| {
                let k1 = self.tangent(&x, t)?;
                for i in 0..x.len() {
                    xnext[i] = x[i] + k1[i] * (0.5 * step);
                }
                let k2 = self.tangent(&xnext, t + 0.5 * step)?;
                for i in 0..x.len() {
                    xnext[i] = x[i] + k2[i] * (0.5 * step);
                }
                let k3 = self.tangent(&xnext, t + 0.5 * step)?;
                for i in 0..x.len() {
                    xnext[i] = x[i] + k3[i] * step;
                }
                let k4 = self.tangent(&xnext, t + step)?;
                for i in 0..x.len() {
                    xnext[i] = x[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (step / 6.0);
                }
                Some(())
            })();

            let mut accepted = false;
            if predicted.is_some() {
                // Newton corrections at the new τ. Ill-conditioned stretches
                // (typically the approach to a root at infinity) put the
                // Newton floor slightly above the nominal tolerance, so a
                // full round of corrections ending within a small multiple
                // of it also counts as converged.
                let tnew = t + step;
                let mut last_rel = f64::INFINITY;
                for _ in 0..self.settings.corrector_iters {
                    match self.correct(&mut xnext, tnew) {
                        Some(rel) if rel <= self.settings.corrector_tol => {
                            accepted = true;
                            break;
                        }
                        Some(rel) => last_rel = rel,
                        None => {
                            last_rel = f64::INFINITY;
                            break;
                        }
                    }
                }
                if !accepted && last_rel <= 100.0 * self.settings.corrector_tol {
                    accepted = true;
                }
            }

            if accepted {
                t += step;
                x.copy_from_slice(&xnext);
                let xmax = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
                if xmax > self.settings.divergence {
                    return PathOutcome::Diverged;
                }
                let om = (1.0 - t).max(ENDGAME_FLOOR);
                if t > ENDGAME_START
                    && samples
                        .last()
                        .is_none_or(|&(last_om, _)| om <= 0.5 * last_om)
                {
                    if samples.len() == SAMPLE_WINDOW {
                        samples.remove(0);
                    }
                    samples.push((om, xmax.max(1e-12)));
                }
                streak += 1;
                if streak >= self.settings.growth_streak {
                    h = (h * 1.5).min(self.settings.max_step);
                    streak = 0;
                }
            } else {
                streak = 0;
                h *= 0.5;
                if h < self.settings.min_step {
                    return self.stall(&mut x, &samples);
                }
            }
        }

        // Divergence must be judged on the tracked point before refinement
        // gets a say: refinement at a point near infinity either fails or
        // trivially "succeeds" (the residual floor there swallows the
        // target), so neither outcome is evidence of a finite root.
        let xmax = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if self.diverging(&samples, xmax) {
            return PathOutcome::Diverged;
        }
        let (residual, ok) = self.refine_endpoint(&mut x);
        if !ok {
            return PathOutcome::Failed;
        }
        let refined_max = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if refined_max > self.escape_bar() {
            return PathOutcome::Diverged;
        }
        PathOutcome::Converged {
            values: x,
            residual,
        }
    }

    /// Norm beyond which an endpoint is treated as lying at infinity: far
    /// outside both a fixed absolute radius and the coefficient scale that
    /// bounds where finite solutions can sit.
    fn escape_bar(&self) -> f64 {
        1e4f64.max(10.0 * self.to.coeff_scale)
    }

    /// Divergence verdict for an endpoint. Either the norm left the scale
    /// of any finite solution outright, or the endgame samples show it
    /// still growing like (1−τ)^(−1/w) at the resolution where tracking
    /// ended: a convergent path's norm flattens (or dips) across halvings
    /// of the remaining distance, a path to infinity climbs monotonically
    /// to the very end.
    fn diverging(&self, samples: &[(f64, f64)], xmax: f64) -> bool {
        if !xmax.is_finite() || xmax > self.escape_bar() {
            return true;
        }
        let monotone = samples.windows(2).all(|w| w[1].1 >= 1.02 * w[0].1);
        if let (Some(&(om0, n0)), Some(&(om1, n1))) = (samples.first(), samples.last()) {
            if monotone && om0 >= 2.0 * om1 && n1 >= 1.2 * n0 {
                let exponent = (n1 / n0).ln() / (om0 / om1).ln();
                if exponent > 0.04 {
                    return true;
                }
            }
        }
        false
    }

    /// Endgame for a path that cannot advance: classify, rescue, or fail.
    fn stall(&mut self, x: &mut [Complex64], samples: &[(f64, f64)]) -> PathOutcome {
        let xmax = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if self.diverging(samples, xmax) {
            return PathOutcome::Diverged;
        }
        if xmax.is_finite() {
            let mut refined = x.to_vec();
            let (residual, ok) = newton_refine(self.to, &mut refined, self.settings.refine_iters);
            if ok {
                let rmax = refined.iter().map(|c| c.norm()).fold(0.0, f64::max);
                if rmax <= self.escape_bar() {
                    return PathOutcome::Converged {
                        values: refined,
                        residual,
                    };
                }
                return PathOutcome::Diverged;
            }
        }
        PathOutcome::Failed
    }
}

/// Plain Newton iteration against one system; used for endpoint refinement
/// and the standalone refine operation. Returns the final max-norm residual
/// and whether it reached the backward-error target `10⁻¹² · (1 + s(x))`,
/// where `s(x)` is the pre-cancellation evaluation magnitude at `x` — the
/// tightest residual double precision can distinguish from zero there.
pub fn newton_refine(sys: &CompiledSystem, x: &mut [Complex64], max_iters: usize) -> (f64, bool) {
    let n = sys.nvars;
    let mut jac = DMatrix::zeros(n, n);
    let mut val = vec![Complex64::new(0.0, 0.0); n];
    let mut rhs = DVector::zeros(n);
    for _ in 0..max_iters {
        sys.eval_into(x, &mut val);
        let residual = val.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if residual <= 1e-12 * (1.0 + sys.residual_scale(x)) {
            return (residual, true);
        }
        for i in 0..n {
            rhs[i] = -val[i];
        }
        sys.jacobian_into(x, &mut jac);
        let Some(delta) = jac.clone().lu().solve(&rhs) else {
            return (residual, false);
        };
        for (xi, d) in x.iter_mut().zip(delta.iter()) {
            *xi += d;
        }
        if x.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return (f64::INFINITY, false);
        }
    }
    let residual = sys.residual(x);
    (residual, residual <= 1e-12 * (1.0 + sys.residual_scale(x)))
}
