//! End-to-end checks of the distance-formulation pipeline on the six
//! 7-vertex graphs with many real embeddings: variable selection via the
//! smallest globally rigid extension, minor selection, equation degrees, and
//! exact mixed volumes of the resulting square subsystems.

use distance_systems::{
    cm_subsystem, cm_subsystem_minors, generic_lengths, mixed_volume, newton_polytopes,
    select_cm_variables,
};
use geiringer::{find_global_extension, known, Graph};

struct Expected {
    name: &'static str,
    graph: fn() -> Graph,
    vars: &'static [(usize, usize)],
    minors: &'static [&'static [usize]],
    degrees: &'static [u32],
    mixed_volume: u64,
}

const TABLE: &[Expected] = &[
    Expected {
        name: "G48",
        graph: known::g48,
        vars: &[(1, 7), (2, 4), (2, 5)],
        minors: &[&[1, 2, 3, 4, 7], &[1, 2, 4, 5, 7], &[1, 2, 5, 6, 7]],
        degrees: &[4, 4, 4],
        mixed_volume: 24,
    },
    Expected {
        name: "G32a",
        graph: known::g32a,
        vars: &[(1, 5), (1, 7), (2, 7)],
        minors: &[&[1, 2, 3, 4, 7], &[1, 2, 3, 5, 7], &[1, 3, 5, 6, 7]],
        degrees: &[2, 4, 2],
        mixed_volume: 16,
    },
    Expected {
        name: "G32b",
        graph: known::g32b,
        vars: &[(1, 6), (2, 4), (4, 6)],
        minors: &[&[1, 2, 3, 4, 6], &[1, 2, 4, 5, 6], &[2, 3, 4, 6, 7]],
        degrees: &[4, 4, 2],
        mixed_volume: 16,
    },
    Expected {
        name: "G24",
        graph: known::g24,
        vars: &[(1, 6), (1, 7), (6, 7)],
        minors: &[&[1, 2, 3, 6, 7], &[1, 2, 5, 6, 7], &[1, 3, 4, 6, 7]],
        degrees: &[3, 3, 3],
        mixed_volume: 12,
    },
    Expected {
        name: "G16a",
        graph: known::g16a,
        vars: &[(1, 4), (1, 5), (4, 5)],
        minors: &[&[1, 2, 3, 4, 5], &[1, 3, 4, 5, 6], &[1, 3, 4, 5, 7]],
        degrees: &[3, 3, 3],
        mixed_volume: 12,
    },
    Expected {
        name: "G16b",
        graph: known::g16b,
        vars: &[(1, 6), (2, 4), (3, 4)],
        minors: &[&[1, 2, 3, 4, 5], &[1, 2, 3, 4, 6], &[2, 3, 4, 6, 7]],
        degrees: &[2, 4, 2],
        mixed_volume: 8,
    },
];

#[test]
fn variable_selection_lands_on_the_published_sets() {
    // The smallest globally rigid extension can be strictly smaller than any
    // variable set carrying a square subsystem (one extra apex–apex edge
    // already makes these graphs globally rigid), so the joint scan must
    // climb to three variables on all six.
    for row in TABLE {
        let g = (row.graph)();
        let d = generic_lengths(&g, 7);
        let vars = select_cm_variables(&g, &d).unwrap();
        assert_eq!(vars, row.vars, "{}: variable selection", row.name);
        assert!(find_global_extension(&g).unwrap().len() <= vars.len());
    }
}

#[test]
fn subsystem_minors_degrees_and_mixed_volumes() {
    for row in TABLE {
        let g = (row.graph)();
        let d = generic_lengths(&g, 7);
        let sys = cm_subsystem(&g, &d, row.vars).unwrap();
        assert_eq!(sys.nvars(), row.vars.len(), "{}: square in k vars", row.name);
        assert_eq!(sys.degrees(), row.degrees, "{}: equation degrees", row.name);
        let minors = cm_subsystem_minors(&g, &d, row.vars).unwrap();
        assert_eq!(minors, row.minors, "{}: minor vertex sets", row.name);
        let mv = mixed_volume(&newton_polytopes(&sys)).unwrap();
        assert_eq!(mv, row.mixed_volume, "{}: mixed volume", row.name);
    }
}

#[test]
fn selection_is_length_independent() {
    // The chosen minors and their degrees are combinatorial facts; three
    // different generic instances must select identically.
    for seed in [101, 202, 303] {
        let g = known::g48();
        let d = generic_lengths(&g, seed);
        let minors = cm_subsystem_minors(&g, &d, &[(1, 7), (2, 4), (2, 5)]).unwrap();
        assert_eq!(
            minors,
            [[1, 2, 3, 4, 7], [1, 2, 4, 5, 7], [1, 2, 5, 6, 7]]
        );
    }
}

#[test]
fn exactly_five_square_systems_in_three_variables() {
    // Of the C(6,3) = 20 ways to choose 3 of G48's six missing pairs as
    // variables, exactly 5 admit a square subsystem; each contains the
    // apex–apex pair plus two rim chords sharing a rim vertex.
    let g = known::g48();
    let d = generic_lengths(&g, 11);
    let non_edges = g.non_edges();
    assert_eq!(non_edges.len(), 6);
    let mut admitting = Vec::new();
    for i in 0..non_edges.len() {
        for j in i + 1..non_edges.len() {
            for k in j + 1..non_edges.len() {
                let vars = [non_edges[i], non_edges[j], non_edges[k]];
                if cm_subsystem(&g, &d, &vars).is_ok() {
                    admitting.push(vars.to_vec());
                }
            }
        }
    }
    let expected: Vec<Vec<(usize, usize)>> = vec![
        vec![(1, 7), (2, 4), (2, 5)],
        vec![(1, 7), (2, 4), (4, 6)],
        vec![(1, 7), (2, 5), (3, 5)],
        vec![(1, 7), (3, 5), (3, 6)],
        vec![(1, 7), (3, 6), (4, 6)],
    ];
    assert_eq!(admitting, expected);
}
