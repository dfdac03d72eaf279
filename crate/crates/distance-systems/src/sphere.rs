//! Coordinate ("sphere") equations for the embedding problem.
//!
//! Rigid motions are factored out by pinning a triangle of the graph: its
//! first vertex at the origin, its second on the positive y-axis, its third
//! in the xy-plane with nonnegative x. Every remaining vertex contributes
//! coordinates `x, y, z` plus the auxiliary square magnitude `s = x²+y²+z²`;
//! the `s` variables keep each edge equation quadratic (bilinear in the
//! coordinates) instead of containing two full squared norms, which removes
//! spurious solutions at toric infinity and keeps the Bézout count at
//! `2^(#free vertices + #free–free edges)`.

use num_complex::Complex64;

use geiringer::Graph;

use crate::error::SystemError;
use crate::lengths::LengthAssignment;
use crate::poly::{Formulation, Polynomial, PolynomialSystem};

/// Relative tolerance deciding when the triangle inequality holds with
/// equality, i.e. when the pinned triangle degenerates to a segment.
const COLLINEAR_TOL: f64 = 1e-12;

/// The pinned triangle: coordinates for its three vertices, plus a flag for
/// the collinear boundary case.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleFrame {
    /// Coordinates of the three fixed vertices, in order.
    pub coords: [[f64; 3]; 3],
    /// True when the triangle inequality holds with equality and the three
    /// points are collinear (`x₃ = 0` forced).
    pub degenerate: bool,
}

/// Places a triangle with side lengths `d12`, `d13`, `d23` into the plane:
/// `v1 = (0,0,0)`, `v2 = (0, d12, 0)`, `v3 = (x₃, y₃, 0)` with `x₃ ≥ 0`.
///
/// A strict triangle-inequality violation is infeasible; equality is
/// accepted but flagged as degenerate, with `x₃` snapped to exactly zero.
pub fn fixed_triangle_coordinates(
    d12: f64,
    d13: f64,
    d23: f64,
) -> Result<TriangleFrame, SystemError> {
    for d in [d12, d13, d23] {
        if !(d > 0.0) || !d.is_finite() {
            return Err(SystemError::InvalidArgument(format!(
                "triangle lengths must be positive and finite, got ({d12}, {d13}, {d23})"
            )));
        }
    }
    // Intersect the circle of radius d13 around v1 with the circle of radius
    // d23 around v2 = (0, d12): y₃ is determined linearly, x₃ up to sign.
    let y3 = (d12 * d12 + d13 * d13 - d23 * d23) / (2.0 * d12);
    let x3_sq = d13 * d13 - y3 * y3;
    let scale = (d13 * d13).max(y3 * y3);
    let (x3, degenerate) = if x3_sq > COLLINEAR_TOL * scale {
        (x3_sq.sqrt(), false)
    } else if x3_sq < -COLLINEAR_TOL * scale {
        return Err(SystemError::InfeasibleTriangle { d12, d13, d23 });
    } else {
        (0.0, true)
    };
    Ok(TriangleFrame {
        coords: [[0.0, 0.0, 0.0], [0.0, d12, 0.0], [x3, y3, 0.0]],
        degenerate,
    })
}

/// Builds the square coordinate system for `g` with the triangle
/// `(v1, v2, v3)` pinned.
///
/// Variables are grouped per free vertex in ascending vertex order as
/// `x_v, y_v, z_v, s_v`. Equations come in two blocks: one magnitude
/// equation `x² + y² + z² − s = 0` per free vertex, then one edge equation
/// per edge outside the triangle, in lexicographic edge order. Edge
/// equations between two free vertices read
/// `s_u + s_v − 2(x_u x_v + y_u y_v + z_u z_v) − d²_uv = 0`; those between a
/// pinned and a free vertex are linear because the pinned coordinates are
/// constants. The system is square with `4(n − 3)` equations and variables.
pub fn build_sphere_system(
    g: &Graph,
    d: &LengthAssignment,
    triangle: (usize, usize, usize),
) -> Result<PolynomialSystem, SystemError> {
    let (v1, v2, v3) = triangle;
    for &(a, b) in &[(v1, v2), (v1, v3), (v2, v3)] {
        if !g.has_edge(a, b) {
            return Err(SystemError::InvalidArgument(format!(
                "triangle ({v1}, {v2}, {v3}) is not a triangle of the graph"
            )));
        }
    }
    d.require_cover(g)?;
    let frame = fixed_triangle_coordinates(
        d.get(v1, v2).expect("cover checked"),
        d.get(v1, v3).expect("cover checked"),
        d.get(v2, v3).expect("cover checked"),
    )?;

    let fixed = [v1, v2, v3];
    let free: Vec<usize> = (1..=g.vertex_count()).filter(|v| !fixed.contains(v)).collect();
    let nvars = 4 * free.len();

    // Variable layout: block of (x, y, z, s) per free vertex.
    let var_base = |v: usize| -> usize {
        let pos = free.iter().position(|&f| f == v).expect("free vertex");
        4 * pos
    };
    let coord_of = |v: usize| -> [f64; 3] {
        let pos = fixed.iter().position(|&f| f == v).expect("fixed vertex");
        frame.coords[pos]
    };
    let mut var_names = Vec::with_capacity(nvars);
    for &v in &free {
        for axis in ["x", "y", "z", "s"] {
            var_names.push(format!("{axis}{v}"));
        }
    }

    let mut polys = Vec::with_capacity(nvars);
    let one = Complex64::new(1.0, 0.0);

    // Magnitude equations: x² + y² + z² − s = 0 for each free vertex.
    for &v in &free {
        let b = var_base(v);
        let mut p = Polynomial::zero(nvars);
        for off in 0..3 {
            let mut exps = vec![0u32; nvars];
            exps[b + off] = 2;
            p.add_term(&exps, one);
        }
        let mut s_exps = vec![0u32; nvars];
        s_exps[b + 3] = 1;
        p.add_term(&s_exps, -one);
        polys.push(p);
    }

    // Edge equations for every edge outside the pinned triangle.
    for (u, v) in g.edges() {
        if fixed.contains(&u) && fixed.contains(&v) {
            continue;
        }
        let dsq = d.squared(u, v).expect("cover checked");
        let mut p = Polynomial::zero(nvars);
        match (fixed.contains(&u), fixed.contains(&v)) {
            (false, false) => {
                let (bu, bv) = (var_base(u), var_base(v));
                for b in [bu, bv] {
                    let mut exps = vec![0u32; nvars];
                    exps[b + 3] = 1;
                    p.add_term(&exps, one);
                }
                for off in 0..3 {
                    let mut exps = vec![0u32; nvars];
                    exps[bu + off] = 1;
                    exps[bv + off] = 1;
                    p.add_term(&exps, -2.0 * one);
                }
                p.add_term(&vec![0; nvars], -dsq * one);
            }
            (true, false) | (false, true) => {
                let (pin, fr) = if fixed.contains(&u) { (u, v) } else { (v, u) };
                let pc = coord_of(pin);
                let s_pin = pc.iter().map(|c| c * c).sum::<f64>();
                let b = var_base(fr);
                let mut s_exps = vec![0u32; nvars];
                s_exps[b + 3] = 1;
                p.add_term(&s_exps, one);
                for off in 0..3 {
                    if pc[off] != 0.0 {
                        let mut exps = vec![0u32; nvars];
                        exps[b + off] = 1;
                        p.add_term(&exps, -2.0 * pc[off] * one);
                    }
                }
                p.add_term(&vec![0; nvars], (s_pin - dsq) * one);
            }
            (true, true) => unreachable!("triangle edges skipped above"),
        }
        polys.push(p);
    }

    let sys = PolynomialSystem {
        formulation: Formulation::Sphere { triangle },
        var_names,
        polys,
    };
    sys.validate()?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use geiringer::known;
    use crate::lengths::generic_lengths;

    #[test]
    fn equilateral_frame() {
        let f = fixed_triangle_coordinates(1.0, 1.0, 1.0).unwrap();
        assert!(!f.degenerate);
        let v3 = f.coords[2];
        assert!((v3[0] - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((v3[1] - 0.5).abs() < 1e-15);
        assert_eq!(v3[2], 0.0);
    }

    #[test]
    fn collinear_boundary_flagged() {
        let f = fixed_triangle_coordinates(1.0, 1.0, 2.0).unwrap();
        assert!(f.degenerate);
        assert_eq!(f.coords[2], [0.0, -1.0, 0.0]);
    }

    #[test]
    fn violated_inequality_is_infeasible() {
        assert!(matches!(
            fixed_triangle_coordinates(1.0, 3.0, 1.0),
            Err(SystemError::InfeasibleTriangle { .. })
        ));
    }

    #[test]
    fn k4_system_shape() {
        let g = known::k4();
        let d = LengthAssignment::from_triples(
            g.edges().into_iter().map(|(u, v)| (u, v, 1.0)),
        )
        .unwrap();
        let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
        assert_eq!(sys.nvars(), 4);
        assert_eq!(sys.len(), 4);
        assert_eq!(sys.degrees(), vec![2, 1, 1, 1]);
        assert_eq!(sys.var_names, vec!["x4", "y4", "z4", "s4"]);
        // The regular tetrahedron apex solves the system.
        let apex = [
            3f64.sqrt() / 6.0,
            0.5,
            (2f64 / 3.0).sqrt(),
            1.0,
        ];
        for value in sys.eval(
            &apex
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        ) {
            assert!(value.norm() < 1e-12);
        }
    }

    #[test]
    fn g48_system_shape() {
        let g = known::g48();
        let d = generic_lengths(&g, 11);
        let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
        assert_eq!(sys.nvars(), 16);
        assert_eq!(sys.len(), 16);
        // 4 magnitude equations of degree 2, then 7 pinned–free (linear) and
        // 5 free–free (quadratic) edge equations: Bézout number 2⁹ = 512.
        let product: u64 = sys.degrees().iter().map(|&d| d as u64).product();
        assert_eq!(product, 512);
    }

    #[test]
    fn octahedron_system_shape() {
        let g = known::octahedron();
        let d = generic_lengths(&g, 5);
        let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
        assert_eq!(sys.nvars(), 12);
        assert_eq!(sys.len(), 12);
    }

    #[test]
    fn z_negation_is_a_system_symmetry() {
        // Negating every z variable leaves all equations literally invariant,
        // because z appears only in squares and z_u z_v products.
        let g = known::g48();
        let d = generic_lengths(&g, 23);
        let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((rng_state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        let point: Vec<Complex64> = (0..sys.nvars())
            .map(|_| Complex64::new(next(), next()))
            .collect();
        let mut mirrored = point.clone();
        for (i, name) in sys.var_names.iter().enumerate() {
            if name.starts_with('z') {
                mirrored[i] = -mirrored[i];
            }
        }
        for (a, b) in sys.eval(&point).iter().zip(sys.eval(&mirrored)) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn missing_triangle_rejected() {
        let g = known::g48();
        let d = generic_lengths(&g, 3);
        // (2, 4) is a missing rim chord, so no triangle contains that pair.
        assert!(build_sphere_system(&g, &d, (2, 4, 6)).is_err());
        assert!(build_sphere_system(&g, &d, (2, 3, 4)).is_err());
    }
}
