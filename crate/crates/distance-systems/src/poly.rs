//! Sparse multivariate polynomials over the complex numbers.
//!
//! Terms are stored as exponent-vector → coefficient maps, which keeps the
//! representation canonical (sorted, duplicate-free) and the arithmetic
//! straightforward. Systems built here are small — tens of variables, tens
//! of terms — so clarity wins over clever evaluation schemes.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::SystemError;

/// A polynomial in `nvars` variables with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl Polynomial {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(&vec![0; nvars], c);
        p
    }

    /// The single variable `x_var` (zero-based index).
    pub fn variable(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(&exps, Complex64::new(1.0, 0.0));
        p
    }

    /// Number of variables of the ambient polynomial ring.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `c · x^exps` to the polynomial, merging with an existing term and
    /// dropping the term if the merged coefficient cancels to exactly zero.
    pub fn add_term(&mut self, exps: &[u32], c: Complex64) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self
            .terms
            .entry(exps.to_vec())
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(exps);
        }
    }

    /// True when no terms remain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(exponent vector, coefficient)` pairs in lexicographic
    /// exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    /// The distinct exponent vectors (the support of the polynomial).
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    /// Total degree, i.e. the maximum over terms of the exponent sum. The
    /// zero polynomial reports degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent of variable `var` over all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// True when variable `var` appears in some term.
    pub fn uses_variable(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Evaluates at a complex point.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, &coeff) in &self.terms {
            let mut term = coeff;
            for (var, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= point[var].powu(e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluates at a real point.
    pub fn eval_real(&self, point: &[f64]) -> Complex64 {
        let complex: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.eval(&complex)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Polynomial::zero(self.nvars);
        for (exps, &coeff) in &self.terms {
            if exps[var] == 0 {
                continue;
            }
            let mut lowered = exps.clone();
            lowered[var] -= 1;
            out.add_term(&lowered, coeff * exps[var] as f64);
        }
        out
    }

    /// Sum of two polynomials over the same variable set.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (exps, &coeff) in &other.terms {
            out.add_term(exps, coeff);
        }
        out
    }

    /// Difference of two polynomials over the same variable set.
    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (exps, &coeff) in &other.terms {
            out.add_term(exps, -coeff);
        }
        out
    }

    /// Product of two polynomials over the same variable set.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&exps, ca * cb);
            }
        }
        out
    }

    /// The polynomial scaled by a complex constant.
    pub fn scale(&self, c: Complex64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (exps, &coeff) in &self.terms {
            out.add_term(exps, coeff * c);
        }
        out
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn coefficient_scale(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Renders the polynomial as `coeff * x1^a1*x2^a2…` terms joined by
    /// ` + `, using the supplied variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "name list length mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (exps, coeff) in &self.terms {
            let coeff_str = if coeff.im == 0.0 {
                format!("{}", coeff.re)
            } else {
                format!("({}{:+}i)", coeff.re, coeff.im)
            };
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], e)
                    }
                })
                .collect();
            if vars.is_empty() {
                parts.push(coeff_str);
            } else {
                parts.push(format!("{} * {}", coeff_str, vars.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format_with(&names))
    }
}

/// Which of the two formulations a system encodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Formulation {
    /// Coordinate ("sphere") equations with the given fixed triangle.
    Sphere { triangle: (usize, usize, usize) },
    /// Determinantal distance-matrix subsystem; `pairs[i]` is the non-edge
    /// whose squared distance is the `i`-th variable.
    CayleyMenger { pairs: Vec<(usize, usize)> },
}

/// A square polynomial system together with its variable names and the
/// formulation it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    pub formulation: Formulation,
    pub var_names: Vec<String>,
    pub polys: Vec<Polynomial>,
}

impl PolynomialSystem {
    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    /// Number of equations.
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    /// True for the empty system.
    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Total degrees of the equations, the data a total-degree start system
    /// is built from.
    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Polynomial::total_degree).collect()
    }

    /// Evaluates every equation at a complex point.
    pub fn eval(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.polys.iter().map(|p| p.eval(point)).collect()
    }

    /// All first-order partial derivatives; entry `[i][j]` is `∂f_i/∂x_j`.
    pub fn partials(&self) -> Vec<Vec<Polynomial>> {
        self.polys
            .iter()
            .map(|p| (0..self.nvars()).map(|v| p.partial(v)).collect())
            .collect()
    }

    /// Checks the structural invariants: the system is square, coefficients
    /// are finite, and every variable appears in at least one equation.
    pub fn validate(&self) -> Result<(), SystemError> {
        if self.polys.len() != self.var_names.len() {
            return Err(SystemError::InvalidArgument(format!(
                "system is not square: {} equations, {} variables",
                self.polys.len(),
                self.var_names.len()
            )));
        }
        for (i, p) in self.polys.iter().enumerate() {
            if p.nvars() != self.nvars() {
                return Err(SystemError::InvalidArgument(format!(
                    "equation {i} is over {} variables, expected {}",
                    p.nvars(),
                    self.nvars()
                )));
            }
            if p.terms().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(SystemError::InvalidArgument(format!(
                    "equation {i} has a non-finite coefficient"
                )));
            }
        }
        for var in 0..self.nvars() {
            if !self.polys.iter().any(|p| p.uses_variable(var)) {
                return Err(SystemError::InvalidArgument(format!(
                    "variable {} appears in no equation",
                    self.var_names[var]
                )));
            }
        }
        Ok(())
    }

    /// One equation per line in the `coeff * x^a` format.
    pub fn dump(&self) -> String {
        self.polys
            .iter()
            .map(|p| p.format_with(&self.var_names))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        // (x + y)(x − y) = x² − y²
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let prod = x.add(&y).mul(&x.sub(&y));
        let mut expect = Polynomial::zero(2);
        expect.add_term(&[2, 0], c(1.0));
        expect.add_term(&[0, 2], c(-1.0));
        assert_eq!(prod, expect);
        assert!(prod.sub(&expect).is_zero());
        assert_eq!(prod.total_degree(), 2);
    }

    #[test]
    fn evaluation_and_partials() {
        // f = 3x²y − 2y + 5
        let mut f = Polynomial::zero(2);
        f.add_term(&[2, 1], c(3.0));
        f.add_term(&[0, 1], c(-2.0));
        f.add_term(&[0, 0], c(5.0));
        let at = [c(2.0), c(-1.0)];
        assert_eq!(f.eval(&at), c(3.0 * 4.0 * -1.0 + 2.0 + 5.0));
        let fx = f.partial(0); // 6xy
        assert_eq!(fx.eval(&at), c(-12.0));
        let fy = f.partial(1); // 3x² − 2
        assert_eq!(fy.eval(&at), c(10.0));
    }

    #[test]
    fn display_format() {
        let mut f = Polynomial::zero(3);
        f.add_term(&[2, 0, 0], c(1.0));
        f.add_term(&[0, 1, 2], c(-2.5));
        f.add_term(&[0, 0, 0], c(4.0));
        assert_eq!(f.to_string(), "4 + -2.5 * x2*x3^2 + 1 * x1^2");
    }

    #[test]
    fn validation_catches_unused_variable() {
        let sys = PolynomialSystem {
            formulation: Formulation::CayleyMenger { pairs: vec![(1, 2), (1, 3)] },
            var_names: vec!["x1".into(), "x2".into()],
            polys: vec![Polynomial::variable(2, 0), Polynomial::variable(2, 0)],
        };
        assert!(sys.validate().is_err());
    }
}
