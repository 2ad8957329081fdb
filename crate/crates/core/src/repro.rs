//! End-to-end scenarios behind `sgdim repro <name>`.
//!
//! Each scenario rebuilds one family of games from scratch and reports a
//! list of named checks.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::boolean::{delta1_formula, formula_dual, formula_game, formula_size, verify_boolean_rep};
use crate::certificates::{
    conjunctive_transfer_certificate, find_certificate, verify_certificate, witness_pair_certificate,
};
use crate::coalition::{k_subsets, Coalition};
use crate::desirability::{shift_maximal_losing, Model};
use crate::dimension::{
    codimension, codimension_bounds, conjunctive_intersection_rep, dimension_bounds, exact_dimension, intersect_games,
    pairwise_incompatible, verify_intersection, Budget, IntersectionRep,
};
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::hierarchical::{
    build, build_delta1, os3_indices, os3_witness_set, prop5_spec, shiftmax_models_closed_form,
    HierarchicalSpec, Kind,
};
use crate::lpsep::{is_roughly_weighted, parse_rational, verify_rough_representation, WeightedRep};

pub const SCENARIOS: [&str; 6] = ["prop5", "os3", "osconj", "sec4", "delta1", "codim"];

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{status} {}", self.name)
        } else {
            write!(f, "{status} {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

pub fn run(name: &str) -> Result<Vec<Check>> {
    let mut checks = Checks::default();
    match name {
        "prop5" => prop5(&mut checks)?,
        "os3" => os3(&mut checks)?,
        "osconj" => osconj(&mut checks)?,
        "sec4" => sec4(&mut checks)?,
        "delta1" => delta1(&mut checks)?,
        "codim" => codim(&mut checks)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown scenario '{other}'; expected one of {}",
                SCENARIOS.join(", ")
            )))
        }
    }
    Ok(checks.0)
}

fn rational(s: &str) -> BigRational {
    parse_rational(s).expect("literal")
}

/// `H_∃((2,5),(2,5))` as two weighted games: one heavy head player each,
/// the other head player at 11/10, tail players at 1, quota 5.
pub fn two_part_representation() -> IntersectionRep {
    let part = |heavy: usize| {
        let mut w: Vec<BigRational> = vec![rational("1"); 7];
        w[heavy] = rational("4");
        w[1 - heavy] = rational("1.1");
        WeightedRep::new(w, rational("5")).expect("valid")
    };
    IntersectionRep::new(vec![part(0), part(1)]).expect("two parts")
}

/// `H_∃((2,5),(2,5))` as ten weighted games, one per 3-subset `T` of the
/// tail: head players weigh 3, tail players in `T` weigh 2, the rest 0,
/// quota 6.
pub fn ten_part_representation() -> IntersectionRep {
    let parts = k_subsets(Coalition::range(2, 7), 3)
        .into_iter()
        .map(|t| {
            let w: Vec<i64> = (0..7)
                .map(|p| if p < 2 { 3 } else if t.contains(p) { 2 } else { 0 })
                .collect();
            WeightedRep::from_integers(&w, 6).expect("valid")
        })
        .collect();
    IntersectionRep::new(parts).expect("ten parts")
}

fn prop5(checks: &mut Checks) -> Result<()> {
    for d in [2, 3] {
        let g = build(&prop5_spec(d)?)?;
        let cert = find_certificate(&g, 2);
        let cert_ok = match &cert {
            Some(tt) => verify_certificate(&g, tt)?,
            None => false,
        };
        checks.add(
            format!("d={d} not weighted (length-2 certificate)"),
            cert_ok,
            cert.map(|t| t.to_string()).unwrap_or_default(),
        );
        let rough = is_roughly_weighted(&g);
        checks.add(
            format!("d={d} roughly weighted"),
            rough.as_ref().is_some_and(|r| verify_rough_representation(&g, r)),
            rough.map(|r| r.to_string()).unwrap_or_default(),
        );
        let (_, witness) = os3_witness_set(d, 2)?;
        let mut explicit_ok = true;
        for a in 0..d {
            for b in a + 1..d {
                let tt = witness_pair_certificate(d, 2, &[a], &[b])?;
                explicit_ok &= verify_certificate(&g, &tt)?;
            }
        }
        checks.add(format!("d={d} explicit pair certificates verify"), explicit_ok, "");
        checks.add(
            format!("d={d} witness set pairwise incompatible"),
            pairwise_incompatible(&g, &witness),
            format!("{} coalitions", witness.len()),
        );
        let report = exact_dimension(&g, Budget::unlimited());
        checks.add(
            format!("d={d} clique lower bound >= {d}"),
            report.lower >= d,
            format!("lower={}", report.lower),
        );
        checks.add(
            format!("d={d} exact dimension in [{d}, |L_max|]"),
            report
                .exact
                .is_some_and(|e| e >= d && e <= report.maximal_losing),
            format!(
                "exact={:?} |L_max|={}",
                report.exact, report.maximal_losing
            ),
        );
    }
    Ok(())
}

fn os3(checks: &mut Checks) -> Result<()> {
    let (k, m) = (2usize, 3usize);
    let (g, witness) = os3_witness_set(k, m)?;
    let expected_lower = k.pow(m as u32 - 1);
    let expected_upper = k.pow(m as u32) * (2 * k - 1).pow(m as u32 - 1);
    checks.add(
        "witness set size = k^(m-1)",
        witness.len() == expected_lower,
        format!("{} vs {expected_lower}", witness.len()),
    );
    checks.add("witness set losing", witness.iter().all(|y| !g.is_winning(*y)), "");
    let idx = os3_indices(k, m);
    let mut explicit_ok = true;
    for a in &idx {
        for b in &idx {
            if a < b {
                explicit_ok &= verify_certificate(&g, &witness_pair_certificate(k, m, a, b)?)?;
            }
        }
    }
    checks.add("explicit pair certificates verify", explicit_ok, "");
    checks.add("witness set pairwise incompatible", pairwise_incompatible(&g, &witness), "");
    let report = dimension_bounds(&g);
    checks.add(
        format!("clique lower bound >= {expected_lower}"),
        report.lower >= expected_lower,
        format!("lower={}", report.lower),
    );
    let shift_max = shift_maximal_losing(&g)?;
    let spec_sizes = [k, 2 * k, 2 * k];
    let shift_max_count: usize = shift_max
        .iter()
        .map(|Model(c)| c.iter().zip(spec_sizes).map(|(&l, s)| binomial(s, l)).product::<usize>())
        .sum();
    checks.add(
        format!("shift-maximal losing coalitions = {expected_upper}"),
        shift_max_count == expected_upper,
        format!("{shift_max_count}"),
    );
    checks.add(
        format!("|L_max| = {expected_upper}"),
        report.maximal_losing == expected_upper,
        format!("{} maximal losing coalitions", report.maximal_losing),
    );
    checks.add(
        format!("greedy cover upper bound <= {expected_upper}"),
        report.upper <= expected_upper && verify_intersection(&g, &report.witness_upper),
        format!("upper={}", report.upper),
    );
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn osconj(checks: &mut Checks) -> Result<()> {
    let spec = HierarchicalSpec::new(Kind::Conjunctive, vec![4, 4, 4], vec![2, 4, 7])?;
    let g = build(&spec)?;
    let rep = conjunctive_intersection_rep(&spec)?;
    checks.add(
        "prefix-count intersection verifies",
        rep.len() == 3 && rep.game()? == g,
        format!("{} parts", rep.len()),
    );
    let models = shiftmax_models_closed_form(&spec)?;
    let expected = vec![Model(vec![1, 4, 4]), Model(vec![3, 0, 4]), Model(vec![4, 2, 0])];
    checks.add(
        "closed-form shift-maximal models",
        models == expected,
        models.iter().map(Model::multiset).collect::<Vec<_>>().join(","),
    );
    checks.add(
        "closed form matches brute force",
        shift_maximal_losing(&g)? == models,
        "",
    );
    let tt = conjunctive_transfer_certificate(&spec, 0, 2)?;
    checks.add(
        "transfer certificate between first and last models",
        verify_certificate(&g, &tt)?,
        tt.to_string(),
    );
    let report = exact_dimension(&g, Budget::unlimited());
    checks.add(
        "exact dimension in [2, 3]",
        report.exact.is_some_and(|e| (2..=3).contains(&e)),
        format!("exact={:?}", report.exact),
    );
    Ok(())
}

fn sec4(checks: &mut Checks) -> Result<()> {
    let spec = HierarchicalSpec::new(Kind::Disjunctive, vec![2, 5], vec![2, 5])?;
    let g = build(&spec)?;
    checks.add(
        "decimal 1.1 read as 11/10",
        parse_rational("1.1") == Some(BigRational::new(BigInt::from(11), BigInt::from(10))),
        "",
    );
    let two = two_part_representation();
    checks.add(
        "two-part representation",
        intersect_games(two.parts(), 7)? == g,
        two.to_string(),
    );
    let ten = ten_part_representation();
    checks.add(
        "ten-part representation",
        intersect_games(ten.parts(), 7)? == g,
        format!("{} parts", ten.len()),
    );
    let report = exact_dimension(&g, Budget::unlimited());
    checks.add(
        "exact dimension = 2",
        report.exact == Some(2),
        format!("exact={:?}", report.exact),
    );
    Ok(())
}

fn delta1(checks: &mut Checks) -> Result<()> {
    for (n, k) in [([2, 2, 2], [1, 2, 3]), ([3, 3, 3], [2, 3, 5])] {
        let f = delta1_formula(n, k)?;
        let g = build_delta1(n, k)?;
        checks.add(
            format!("n={n:?} k={k:?} formula verifies"),
            verify_boolean_rep(&g, &f),
            f.to_string(),
        );
        checks.add(format!("n={n:?} k={k:?} size 3"), formula_size(&f) == 3, "");
        let dual = formula_dual(&f)?;
        checks.add(
            format!("n={n:?} k={k:?} dual formula is the dual game"),
            formula_game(&dual)? == g.dual() && formula_size(&dual) == 3,
            dual.to_string(),
        );
    }
    Ok(())
}

fn codim(checks: &mut Checks) -> Result<()> {
    let majority = SimpleGame::new(5, k_subsets(Coalition::full(5), 3))?;
    let games: Vec<(&str, SimpleGame)> = vec![
        ("majority 3 of 5", majority),
        ("disj n=2,4 k=2,4", build(&prop5_spec(2)?)?),
        ("disj n=2,5 k=2,5", build(&HierarchicalSpec::new(Kind::Disjunctive, vec![2, 5], vec![2, 5])?)?),
        ("delta1 n=2,2,2 k=1,2,3", build_delta1([2, 2, 2], [1, 2, 3])?),
    ];
    for (label, g) in games {
        let dim = exact_dimension(&g, Budget::unlimited()).exact;
        let co = codimension(&g.dual(), Budget::unlimited()).exact;
        checks.add(
            format!("{label}: codim(dual) = dim"),
            dim.is_some() && dim == co,
            format!("dim={dim:?} codim(dual)={co:?}"),
        );
    }
    let (g, _) = os3_witness_set(2, 3)?;
    let lower = codimension_bounds(&g.dual()).lower;
    checks.add(
        "dual of k=2 m=3 witness game has codimension >= 4",
        lower >= 4,
        format!("lower={lower}"),
    );
    Ok(())
}
