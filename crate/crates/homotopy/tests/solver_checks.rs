//! End-to-end checks of the continuation solver: known embedding counts,
//! certificate length lists, parameter tracking, the mixed-volume scan,
//! and coordinate recovery.

use geiringer::known;

use distance_systems::{
    build_sphere_system, g16b_lengths, g48_lengths_28, generic_lengths, induced_lengths,
};
use homotopy::{
    count_embeddings, default_triangle, min_mixed_volume_over_triangles, realize_from_distances,
    solve_total_degree, track_parameter_homotopy, FormulationKind, SolverError,
};

#[test]
fn tetrahedron_has_two_embeddings() {
    let g = known::k4();
    let d = generic_lengths(&g, 7);
    let counts = count_embeddings(&g, &d, FormulationKind::Sphere, None, 1).unwrap();
    assert_eq!(counts.complex, 2);
    assert_eq!(counts.real, 2);
}

#[test]
fn default_triangle_minimizes_path_count() {
    assert_eq!(default_triangle(&known::g48()).unwrap(), (1, 2, 3));
    assert_eq!(default_triangle(&known::k4()).unwrap(), (1, 2, 3));
}

#[test]
fn generic_complex_count_of_the_pentagonal_bipyramid() {
    let g = known::g48();
    let d = generic_lengths(&g, 11);
    let counts = count_embeddings(&g, &d, FormulationKind::Sphere, None, 3).unwrap();
    assert_eq!(counts.complex, 48);
    assert_eq!(counts.real % 2, 0);
    assert!(counts.real <= counts.complex);
}

#[test]
fn generic_complex_count_of_a_sixteen_count_graph() {
    let g = known::g16b();
    let d = generic_lengths(&g, 23);
    let counts = count_embeddings(&g, &d, FormulationKind::Sphere, None, 5).unwrap();
    assert_eq!(counts.complex, 16);
    assert_eq!(counts.real % 2, 0);
}

#[test]
fn twenty_eight_real_embeddings_from_the_certificate() {
    let g = known::g48();
    let counts = count_embeddings(&g, &g48_lengths_28(), FormulationKind::Sphere, None, 2).unwrap();
    assert_eq!(counts.complex, 48);
    assert_eq!(counts.real, 28);
}

#[test]
fn distance_formulation_agrees_on_the_certificate() {
    let g = known::g48();
    let counts = count_embeddings(&g, &g48_lengths_28(), FormulationKind::Cm, None, 2).unwrap();
    assert_eq!(counts.complex, 48);
    assert_eq!(counts.real, 28);
    assert_eq!(
        counts.cm_vars.as_deref(),
        Some(&[(1, 7), (2, 4), (2, 5)][..])
    );
}

#[test]
fn parameter_homotopy_to_the_same_system_is_the_identity() {
    let g = known::g16b();
    let d = generic_lengths(&g, 31);
    let sys = build_sphere_system(&g, &d, default_triangle(&g).unwrap()).unwrap();
    let sols = solve_total_degree(&sys, 4).unwrap();
    let moved = track_parameter_homotopy(&sys, &sols, &sys, 5).unwrap();
    assert_eq!(moved.complex_count, sols.complex_count);
    assert_eq!(moved.real_count, sols.real_count);
}

#[test]
fn parameter_homotopy_reaches_the_certificate_counts() {
    let g = known::g48();
    let t = default_triangle(&g).unwrap();
    let generic = build_sphere_system(&g, &generic_lengths(&g, 41), t).unwrap();
    let sols = solve_total_degree(&generic, 6).unwrap();
    assert_eq!(sols.complex_count, 48);
    let target = build_sphere_system(&g, &g48_lengths_28(), t).unwrap();
    let moved = track_parameter_homotopy(&generic, &sols, &target, 7).unwrap();
    assert_eq!(moved.complex_count, 48);
    assert_eq!(moved.real_count, 28);
}

#[test]
fn minimum_mixed_volume_over_triangles_on_small_graphs() {
    let k4 = known::k4();
    let d = generic_lengths(&k4, 3);
    assert_eq!(min_mixed_volume_over_triangles(&k4, &d, 1).unwrap(), 2);

    let g = known::g16b();
    let d = g16b_lengths();
    assert_eq!(min_mixed_volume_over_triangles(&g, &d, 1).unwrap(), 16);
}

#[test]
fn minimum_mixed_volume_over_triangles_on_the_pentagonal_bipyramid() {
    let g = known::g48();
    let d = generic_lengths(&g, 17);
    assert_eq!(min_mixed_volume_over_triangles(&g, &d, 1).unwrap(), 48);
}

#[test]
fn regular_tetrahedron_coordinates_from_unit_distances() {
    let mut m = vec![vec![1.0; 4]; 4];
    for i in 0..4 {
        m[i][i] = 0.0;
    }
    let pts = realize_from_distances(&m).unwrap();
    for i in 0..4 {
        for j in i + 1..4 {
            let d2: f64 = (0..3).map(|k| (pts[i][k] - pts[j][k]).powi(2)).sum();
            assert!((d2.sqrt() - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn realization_round_trips_through_distances() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let points: Vec<[f64; 3]> = (0..7)
        .map(|_| [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()])
        .collect();
    let mut m = vec![vec![0.0; 7]; 7];
    for i in 0..7 {
        for j in 0..7 {
            m[i][j] = (0..3)
                .map(|k| (points[i][k] - points[j][k]).powi(2))
                .sum::<f64>()
                .sqrt();
        }
    }
    let recovered = realize_from_distances(&m).unwrap();
    // The recovery is only up to rigid motion; distances are the invariant.
    for i in 0..7 {
        for j in i + 1..7 {
            let d: f64 = (0..3)
                .map(|k| (recovered[i][k] - recovered[j][k]).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((d - m[i][j]).abs() <= 1e-6 * (1.0 + m[i][j]));
        }
    }
    // And the induced length map round-trips for a graph on these points.
    let g = known::g48();
    let a = induced_lengths(&g, &points).unwrap();
    let b = induced_lengths(&g, &recovered).unwrap();
    for ((u, v), len) in a.iter() {
        assert!((len - b.get(*u, *v).unwrap()).abs() <= 1e-6 * (1.0 + len));
    }
}

#[test]
fn four_dimensional_distance_data_is_rejected() {
    // Six vertices of the 4-dimensional cross-polytope: ±e₁, ±e₂, e₃, e₄.
    let points: [[f64; 4]; 6] = [
        [1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let mut m = vec![vec![0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            m[i][j] = (0..4)
                .map(|k| (points[i][k] - points[j][k]).powi(2))
                .sum::<f64>()
                .sqrt();
        }
    }
    match realize_from_distances(&m) {
        Err(SolverError::NotEmbeddable(_)) => {}
        other => panic!("expected a not-embeddable error, got {other:?}"),
    }
}

#[test]
fn solution_sets_serialize_with_their_provenance() {
    let g = known::k4();
    let d = generic_lengths(&g, 5);
    let sys = build_sphere_system(&g, &d, (1, 2, 3)).unwrap();
    let sols = solve_total_degree(&sys, 9).unwrap();
    let text = sols.to_json();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["formulation"], "sphere(1,2,3)");
    assert_eq!(parsed["seed"], 9);
    assert_eq!(
        parsed["solutions"].as_array().unwrap().len(),
        sols.complex_count
    );
}
