//! Flattened system representation for the tracking hot loop.
//!
//! The sparse-map polynomials are convenient to build but slow to evaluate
//! repeatedly; tracking evaluates the system and its Jacobian thousands of
//! times per path. Compilation flattens every polynomial (and every partial
//! derivative) into coefficient/factor arrays evaluated with plain loops and
//! no allocation.

use distance_systems::{Polynomial, PolynomialSystem};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// One monomial: coefficient times a product of variable powers (nonzero
/// exponents only).
#[derive(Debug, Clone)]
struct Term {
    coeff: Complex64,
    factors: Vec<(usize, u32)>,
}

/// A polynomial flattened for evaluation.
#[derive(Debug, Clone, Default)]
pub struct CompiledPoly {
    terms: Vec<Term>,
}

impl CompiledPoly {
    fn from_poly(p: &Polynomial) -> Self {
        let terms = p
            .terms()
            .map(|(exps, &coeff)| Term {
                coeff,
                factors: exps
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(v, &e)| (v, e))
                    .collect(),
            })
            .collect();
        CompiledPoly { terms }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut m = t.coeff;
            for &(v, e) in &t.factors {
                m *= match e {
                    1 => x[v],
                    2 => x[v] * x[v],
                    _ => x[v].powu(e),
                };
            }
            acc += m;
        }
        acc
    }

    /// `Σ |c|·Π|xᵥ|^e`: the magnitude the evaluation sums before
    /// cancellation, which bounds the attainable residual at `x` (roundoff
    /// is proportional to it).
    fn eval_magnitude(&self, x: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for t in &self.terms {
            let mut m = t.coeff.norm();
            for &(v, e) in &t.factors {
                m *= x[v].norm().powi(e as i32);
            }
            acc += m;
        }
        acc
    }
}

/// A square system with precompiled equations and Jacobian entries.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    pub nvars: usize,
    polys: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
    /// Largest coefficient magnitude; scales the refinement target.
    pub coeff_scale: f64,
    /// Total degrees of the equations, for total-degree start systems.
    pub degrees: Vec<u32>,
}

impl CompiledSystem {
    pub fn from_system(sys: &PolynomialSystem) -> Self {
        let nvars = sys.nvars();
        let polys: Vec<CompiledPoly> = sys.polys.iter().map(CompiledPoly::from_poly).collect();
        let jac = sys
            .polys
            .iter()
            .map(|p| {
                (0..nvars)
                    .map(|v| CompiledPoly::from_poly(&p.partial(v)))
                    .collect()
            })
            .collect();
        let coeff_scale = sys
            .polys
            .iter()
            .map(Polynomial::coefficient_scale)
            .fold(1.0, f64::max);
        CompiledSystem {
            nvars,
            polys,
            jac,
            coeff_scale,
            degrees: sys.degrees(),
        }
    }

    /// The total-degree start system `xᵢ^{dᵢ} − 1 = 0` for a target with the
    /// given degrees, together with its full set of start solutions (all
    /// combinations of the relevant roots of unity).
    pub fn total_degree_start(degrees: &[u32]) -> (Self, Vec<Vec<Complex64>>) {
        let nvars = degrees.len();
        let one = Complex64::new(1.0, 0.0);
        let polys: Vec<CompiledPoly> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| CompiledPoly {
                terms: vec![
                    Term {
                        coeff: one,
                        factors: vec![(i, d)],
                    },
                    Term {
                        coeff: -one,
                        factors: Vec::new(),
                    },
                ],
            })
            .collect();
        let jac = (0..nvars)
            .map(|i| {
                (0..nvars)
                    .map(|v| {
                        if v == i {
                            CompiledPoly {
                                terms: vec![Term {
                                    coeff: Complex64::new(degrees[i] as f64, 0.0),
                                    factors: vec![(i, degrees[i] - 1)]
                                        .into_iter()
                                        .filter(|&(_, e)| e > 0)
                                        .collect(),
                                }],
                            }
                        } else {
                            CompiledPoly::default()
                        }
                    })
                    .collect()
            })
            .collect();
        let sys = CompiledSystem {
            nvars,
            polys,
            jac,
            coeff_scale: 1.0,
            degrees: degrees.to_vec(),
        };

        // Mixed-radix enumeration of root-of-unity combinations.
        let total: usize = degrees.iter().map(|&d| d as usize).product();
        let mut starts = Vec::with_capacity(total);
        let mut counter = vec![0u32; nvars];
        for _ in 0..total {
            let sol: Vec<Complex64> = counter
                .iter()
                .zip(degrees)
                .map(|(&k, &d)| {
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64)
                })
                .collect();
            starts.push(sol);
            for i in (0..nvars).rev() {
                counter[i] += 1;
                if counter[i] < degrees[i] {
                    break;
                }
                counter[i] = 0;
            }
        }
        (sys, starts)
    }

    pub fn eval_into(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (o, p) in out.iter_mut().zip(&self.polys) {
            *o = p.eval(x);
        }
    }

    /// Max-norm residual of the system at `x`.
    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.polys
            .iter()
            .map(|p| p.eval(x).norm())
            .fold(0.0, f64::max)
    }

    /// Largest pre-cancellation evaluation magnitude over the equations;
    /// the smallest residual double precision can certify at `x` is a small
    /// multiple of machine epsilon times this.
    pub fn residual_scale(&self, x: &[Complex64]) -> f64 {
        self.polys
            .iter()
            .map(|p| p.eval_magnitude(x))
            .fold(0.0, f64::max)
    }

    pub fn jacobian_into(&self, x: &[Complex64], out: &mut DMatrix<Complex64>) {
        for (r, row) in self.jac.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                out[(r, c)] = p.eval(x);
            }
        }
    }

    /// Single Jacobian entry `∂fᵣ/∂x_c` at `x`; lets callers blend two
    /// systems' Jacobians without a scratch matrix.
    pub fn jac_entry(&self, r: usize, c: usize, x: &[Complex64]) -> Complex64 {
        self.jac[r][c].eval(x)
    }
}
