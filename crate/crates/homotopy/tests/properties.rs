//! Invariant checks on solver output: symmetry closure of solution sets,
//! count doubling under vertex addition, mixed-volume agreement for the
//! distance subsystems, realization round-trips, and refinement behavior.

use distance_systems::{
    build_sphere_system, cm_subsystem, generic_lengths, mixed_volume, newton_polytopes,
    select_cm_variables,
};
use geiringer::{generate_catalog, henneberg_h1, known, Graph};
use homotopy::{
    count_embeddings, default_triangle, realize_from_distances, refine, solve_total_degree,
    FormulationKind, Solution, DEDUPE_TOL,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: &[Complex64], b: &[Complex64]) -> bool {
    let scale = 1.0 + a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let gap = a
        .iter()
        .zip(b)
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max);
    gap <= 1e-6 * scale
}

fn set_contains(set: &[Solution], target: &[Complex64]) -> bool {
    set.iter().any(|s| close(&s.values, target))
}

/// The sphere formulation pins a triangle into the z = 0 plane, so negating
/// every z coordinate maps solutions to solutions (reflection through that
/// plane), and real-coefficient systems close under complex conjugation.
/// Both symmetries are fixed-point free for generic lengths, which also
/// forces both counts even.
#[test]
fn sphere_solution_sets_close_under_reflection_and_conjugation() {
    let cases: &[(usize, usize, u64)] = &[
        (4, 0, 101),
        (4, 0, 102),
        (5, 0, 201),
        (5, 0, 202),
        (5, 0, 203),
        (6, 0, 301),
        (6, 1, 302),
        (6, 2, 303),
        (6, 3, 304),
        (6, 1, 305),
        (7, 3, 401),
        (7, 11, 402),
    ];
    for &(n, idx, seed) in cases {
        let graphs = generate_catalog(n).unwrap();
        let g = &graphs[idx % graphs.len()];
        let d = generic_lengths(g, seed);
        let tri = default_triangle(g).unwrap();
        let sys = build_sphere_system(g, &d, tri).unwrap();
        let set = solve_total_degree(&sys, seed ^ 0xabcd).unwrap();
        let tag = format!("n={n} idx={idx} seed={seed}");

        assert_eq!(set.complex_count % 2, 0, "odd complex count at {tag}");
        assert_eq!(set.real_count % 2, 0, "odd real count at {tag}");
        assert!(set.real_count <= set.complex_count, "real > complex at {tag}");

        for (i, a) in set.solutions.iter().enumerate() {
            for b in &set.solutions[i + 1..] {
                let scale = 1.0 + a.values.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let gap = a
                    .values
                    .iter()
                    .zip(&b.values)
                    .map(|(p, q)| (p - q).norm())
                    .fold(0.0, f64::max);
                assert!(gap > DEDUPE_TOL * scale, "solutions too close at {tag}");
            }
        }

        for s in &set.solutions {
            let reflected: Vec<Complex64> = s
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| if i % 4 == 2 { -v } else { v })
                .collect();
            assert!(
                set_contains(&set.solutions, &reflected),
                "missing mirror image at {tag}"
            );
            let conjugated: Vec<Complex64> = s.values.iter().map(|c| c.conj()).collect();
            assert!(
                set_contains(&set.solutions, &conjugated),
                "missing conjugate at {tag}"
            );
        }
    }
}

/// Adding a degree-3 vertex intersects three spheres around generic
/// centers: two new positions per old embedding, hence exactly twice the
/// complex count.
#[test]
fn vertex_addition_doubles_the_generic_complex_count() {
    let six = generate_catalog(6).unwrap();
    let parents: Vec<(Graph, u64)> = vec![
        (known::k4(), 11),
        (known::k4(), 12),
        (known::five_vertex(), 13),
        (known::five_vertex(), 14),
        (six[0].clone(), 15),
        (six[2].clone(), 16),
    ];
    for (g, seed) in parents {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut targets: Vec<usize> = (1..=g.vertex_count()).collect();
        targets.shuffle(&mut rng);
        let child = henneberg_h1(&g, (targets[0], targets[1], targets[2])).unwrap();

        let pd = generic_lengths(&g, seed.wrapping_mul(7919));
        let cd = generic_lengths(&child, seed.wrapping_mul(104_729));
        let parent = count_embeddings(&g, &pd, FormulationKind::Sphere, None, seed).unwrap();
        let grown = count_embeddings(&child, &cd, FormulationKind::Sphere, None, seed + 1).unwrap();
        assert_eq!(
            grown.complex,
            2 * parent.complex,
            "seed {seed}: {} -> {}",
            parent.complex,
            grown.complex
        );
    }
}

/// The root count of a distance subsystem never exceeds the mixed volume of
/// its Newton polytopes, and generic lengths attain it.
#[test]
fn distance_subsystem_root_counts_match_their_mixed_volumes() {
    let graphs: Vec<(Graph, u64)> = vec![
        (known::g48(), 21),
        (known::g32a(), 22),
        (known::g32b(), 23),
        (known::g24(), 24),
        (known::g16a(), 25),
        (known::g16b(), 26),
    ];
    for (g, seed) in graphs {
        let d = generic_lengths(&g, seed);
        let vars = select_cm_variables(&g, &d).unwrap();
        let sys = cm_subsystem(&g, &d, &vars).unwrap();
        let mv = mixed_volume(&newton_polytopes(&sys)).unwrap() as usize;
        let set = solve_total_degree(&sys, seed ^ 0x5a5a).unwrap();
        assert!(
            set.complex_count <= mv,
            "seed {seed}: {} roots exceed mixed volume {mv}",
            set.complex_count
        );
        assert_eq!(
            set.complex_count, mv,
            "seed {seed}: generic lengths should attain the mixed volume"
        );
    }
}

#[test]
fn refinement_is_stationary_and_recovers_perturbed_solutions() {
    let g = known::k4();
    let d = generic_lengths(&g, 77);
    let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
    let set = solve_total_degree(&sys, 9).unwrap();
    assert!(!set.solutions.is_empty());
    for s in &set.solutions {
        let again = refine(s, &sys);
        assert!(!again.failed);
        assert!(close(&again.values, &s.values), "refinement moved a root");

        let mut bumped = s.clone();
        for v in &mut bumped.values {
            *v += Complex64::new(1e-4, -1e-4);
        }
        let back = refine(&bumped, &sys);
        assert!(!back.failed);
        assert!(close(&back.values, &s.values), "perturbation not recovered");
    }
}

#[test]
fn refinement_rejects_points_far_from_the_variety() {
    let g = known::k4();
    let d = generic_lengths(&g, 78);
    let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
    let far = Solution {
        values: vec![Complex64::new(1e160, 1e160); sys.nvars()],
        residual: f64::INFINITY,
        multiple: false,
        is_real: false,
        failed: false,
    };
    assert!(refine(&far, &sys).failed);
}

#[test]
fn equal_seeds_give_identical_solution_sets() {
    for (g, seed) in [(known::five_vertex(), 42u64), (known::g16b(), 43u64)] {
        let d = generic_lengths(&g, seed);
        let sys = build_sphere_system(&g, &d, default_triangle(&g).unwrap()).unwrap();
        let a = solve_total_degree(&sys, seed).unwrap();
        let b = solve_total_degree(&sys, seed).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    /// Round trip: distances of a random 7-point configuration go through
    /// the Gram-matrix realization and come back within tolerance.
    #[test]
    fn realized_coordinates_reproduce_their_distance_matrix(
        coords in proptest::collection::vec(-1.0f64..1.0, 21)
    ) {
        let pts: Vec<[f64; 3]> = coords.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        let n = pts.len();
        let mut dist = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let dx = pts[i][0] - pts[j][0];
                let dy = pts[i][1] - pts[j][1];
                let dz = pts[i][2] - pts[j][2];
                dist[i][j] = (dx * dx + dy * dy + dz * dz).sqrt();
            }
        }
        let rec = realize_from_distances(&dist).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                let dx = rec[i][0] - rec[j][0];
                let dy = rec[i][1] - rec[j][1];
                let dz = rec[i][2] - rec[j][2];
                let got = (dx * dx + dy * dy + dz * dz).sqrt();
                prop_assert!((got - dist[i][j]).abs() <= 1e-6 * (1.0 + dist[i][j]));
            }
        }
    }
}
