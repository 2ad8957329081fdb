//! Whole-corpus checks against brute-force oracles on small player sets.

mod common;

use rayon::prelude::*;

use sgdim::boolean::{delta1_formula, verify_boolean_rep};
use sgdim::desirability::shift_maximal_losing;
use sgdim::dimension::{exact_dimension, Budget};
use sgdim::hierarchical::{build, build_delta1, shiftmax_models_closed_form, validate_partiteness, HierarchicalSpec, Kind};
use sgdim::lpsep::{is_roughly_weighted, is_weighted, verify_representation};

use common::{intersection_cover_dim, monotone_tables, table_game, threshold_tables};

#[test]
fn monotone_counts_are_dedekind_numbers() {
    let counts: Vec<usize> = (0..=6).map(|n| monotone_tables(n).len()).collect();
    assert_eq!(counts, [2, 3, 6, 20, 168, 7581, 7_828_354]);
}

#[test]
fn weight_bound_of_the_oracle_is_saturated() {
    // Allowing heavier weights finds no further weighted games.
    assert_eq!(threshold_tables(4, 3), threshold_tables(4, 6));
    assert_eq!(threshold_tables(5, 5).len(), threshold_tables(5, 7).len());
}

#[test]
fn lp_weightedness_matches_integer_search() {
    for n in 1..=5 {
        let weighted = threshold_tables(n, 5);
        let bad: Vec<u64> = monotone_tables(n)
            .into_par_iter()
            .filter(|&f| {
                let g = table_game(f, n);
                let rep = is_weighted(&g);
                let rep_ok = rep.as_ref().is_none_or(|r| verify_representation(&g, r));
                let rough_ok = rep.is_none() || is_roughly_weighted(&g).is_some();
                rep.is_some() != weighted.contains(&f) || !rep_ok || !rough_ok
            })
            .collect();
        assert!(bad.is_empty(), "n={n}: {} disagreements, first {:#x}", bad.len(), bad[0]);
    }
}

#[test]
fn exact_dimension_matches_intersection_cover() {
    for n in 1..=4 {
        let weighted = threshold_tables(n, 5);
        for f in monotone_tables(n) {
            let g = table_game(f, n);
            let report = exact_dimension(&g, Budget::unlimited());
            assert_eq!(
                report.exact,
                Some(intersection_cover_dim(f, n, &weighted)),
                "n={n} table {f:#x}"
            );
            assert!(report.lower <= report.upper);
        }
    }
}

/// All truly partite conjunctive specs with up to three classes of at most three players.
fn small_conjunctive_specs() -> Vec<HierarchicalSpec> {
    let mut out = Vec::new();
    let sizes_all: Vec<Vec<usize>> = (1..=3)
        .flat_map(|m| {
            (0..3usize.pow(m)).map(move |code| (0..m).map(|i| code / 3usize.pow(i) % 3 + 1).collect())
        })
        .collect();
    for sizes in sizes_all {
        let total: usize = sizes.iter().sum();
        let m = sizes.len();
        for code in 0..total.pow(m as u32) {
            let k: Vec<usize> = (0..m).map(|i| code / total.pow(i as u32) % total + 1).collect();
            let Ok(spec) = HierarchicalSpec::new(Kind::Conjunctive, sizes.clone(), k) else { continue };
            if validate_partiteness(&spec).unwrap().true_m_partite {
                out.push(spec);
            }
        }
    }
    out
}

#[test]
fn closed_form_shift_maximal_models_on_all_small_specs() {
    let specs = small_conjunctive_specs();
    assert!(specs.len() > 50);
    for spec in specs {
        let brute = shift_maximal_losing(&build(&spec).unwrap()).unwrap();
        assert_eq!(shiftmax_models_closed_form(&spec).unwrap(), brute, "{spec}");
    }
}

#[test]
fn delta1_formula_on_small_parameters() {
    let mut verified = 0;
    for n in (1..=3).flat_map(|a| (1..=3).flat_map(move |b| (1..=3).map(move |c| [a, b, c]))) {
        let total: usize = n.iter().sum();
        for k1 in 1..=total {
            for k2 in 1..=total {
                for k3 in k1.max(k2) + 1..=total {
                    let k = [k1, k2, k3];
                    let (Ok(g), Ok(f)) = (build_delta1(n, k), delta1_formula(n, k)) else { continue };
                    assert!(verify_boolean_rep(&g, &f), "n={n:?} k={k:?}");
                    verified += 1;
                }
            }
        }
    }
    assert!(verified > 20, "only {verified} parameter sets accepted");
}
