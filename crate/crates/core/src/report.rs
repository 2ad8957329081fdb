//! Reports printed by the command-line tool, as text or JSON.
//!
//! JSON field names are stable. Rationals are strings of the form `p/q`
//! (or plain integers).

use std::fmt::Write as _;

use serde::Serialize;

use crate::certificates::{find_certificate, DEFAULT_MAX_LEN};
use crate::coalition::Coalition;
use crate::desirability::{
    equivalence_classes, incomparable_pair, minimal_winning_models, shift_maximal_losing,
    shift_minimal_winning, Model,
};
use crate::dimension::DimensionReport;
use crate::game::SimpleGame;
use crate::lpsep::{is_roughly_weighted, is_weighted, verify_representation, verify_rough_representation};

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Representation as `[q; w1, ..., wn]`.
    pub witness: Option<String>,
    pub witness_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub players: usize,
    pub min_winning: usize,
    pub maximal_losing: usize,
    pub complete: bool,
    /// A pair of incomparable players when the game is not complete.
    pub incomparable: Option<(usize, usize)>,
    pub classes: Option<Vec<Vec<usize>>>,
    pub minimal_winning_models: Option<Vec<String>>,
    pub shift_minimal_winning: Option<Vec<String>>,
    pub shift_maximal_losing: Option<Vec<String>>,
    pub veto: Coalition,
    pub dummy: Coalition,
    pub weighted: Verdict,
    pub roughly_weighted: Verdict,
    /// `None` when not requested or the game is weighted.
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub certificates: bool,
    pub max_certificate_len: Option<usize>,
}

fn multisets(models: &[Model]) -> Vec<String> {
    models.iter().map(Model::multiset).collect()
}

pub fn analyze(g: &SimpleGame, options: AnalyzeOptions) -> AnalyzeReport {
    let incomparable = incomparable_pair(g);
    let complete = incomparable.is_none();
    let classes = equivalence_classes(g).ok();
    let models = |f: fn(&SimpleGame) -> crate::Result<Vec<Model>>| {
        if complete {
            f(g).ok().map(|m| multisets(&m))
        } else {
            None
        }
    };
    let weighted_rep = is_weighted(g);
    let weighted = Verdict {
        holds: weighted_rep.is_some(),
        witness_verified: weighted_rep
            .as_ref()
            .is_some_and(|r| verify_representation(g, r)),
        witness: weighted_rep.as_ref().map(ToString::to_string),
    };
    let rough_rep = is_roughly_weighted(g);
    let roughly_weighted = Verdict {
        holds: rough_rep.is_some(),
        witness_verified: rough_rep
            .as_ref()
            .is_some_and(|r| verify_rough_representation(g, r)),
        witness: rough_rep.as_ref().map(ToString::to_string),
    };
    let certificate = if options.certificates && weighted_rep.is_none() {
        find_certificate(g, options.max_certificate_len.unwrap_or(DEFAULT_MAX_LEN)).map(|t| t.to_string())
    } else {
        None
    };
    AnalyzeReport {
        players: g.num_players(),
        min_winning: g.min_winning().len(),
        maximal_losing: g.maximal_losing().len(),
        complete,
        incomparable,
        classes: classes.as_ref().map(|c| c.classes().to_vec()),
        minimal_winning_models: models(minimal_winning_models),
        shift_minimal_winning: models(shift_minimal_winning),
        shift_maximal_losing: models(shift_maximal_losing),
        veto: g.veto_players(),
        dummy: g.dummy_players(),
        weighted,
        roughly_weighted,
        certificate,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl AnalyzeReport {
    pub fn class_sizes(&self) -> Option<String> {
        self.classes.as_ref().map(|cs| {
            cs.iter()
                .map(|c| c.len().to_string())
                .collect::<Vec<_>>()
                .join("+")
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "players: {}", self.players);
        let _ = writeln!(out, "minimal winning coalitions: {}", self.min_winning);
        let _ = writeln!(out, "maximal losing coalitions: {}", self.maximal_losing);
        match self.incomparable {
            None => {
                let _ = writeln!(out, "complete: yes");
            }
            Some((i, j)) => {
                let _ = writeln!(out, "complete: no (players {i} and {j} are incomparable)");
            }
        }
        if let Some(classes) = &self.classes {
            let list: Vec<String> = classes
                .iter()
                .map(|c| Coalition::from_members(c.iter().copied()).to_string())
                .collect();
            let _ = writeln!(out, "classes: {}", list.join(" > "));
        }
        let line = |out: &mut String, label: &str, v: &Option<Vec<String>>| {
            if let Some(v) = v {
                let _ = writeln!(out, "{label}: {}", v.join(","));
            }
        };
        line(&mut out, "minimal winning models", &self.minimal_winning_models);
        line(&mut out, "shift-minimal winning models", &self.shift_minimal_winning);
        line(&mut out, "shift-maximal losing models", &self.shift_maximal_losing);
        let _ = writeln!(out, "veto players: {}", self.veto);
        let _ = writeln!(out, "dummy players: {}", self.dummy);

        let classes = self
            .class_sizes()
            .map_or(String::new(), |s| format!("; classes {s}"));
        if self.weighted.holds {
            let _ = writeln!(
                out,
                "WEIGHTED: yes; witness {}{classes}",
                if self.weighted.witness_verified { "verifies" } else { "FAILS verification" }
            );
        } else {
            let _ = writeln!(out, "WEIGHTED: no{classes}");
        }
        if let Some(w) = &self.weighted.witness {
            let _ = writeln!(out, "weighted witness: {w}");
        }
        let _ = writeln!(out, "ROUGHLY WEIGHTED: {}", yes_no(self.roughly_weighted.holds));
        if let Some(w) = &self.roughly_weighted.witness {
            let _ = writeln!(out, "rough witness: {w}");
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "{c}");
        }
        out
    }
}

pub fn dimension_text(report: &DimensionReport) -> String {
    let mut out = String::new();
    let exact = report
        .exact
        .map_or_else(|| "unknown".to_string(), |e| e.to_string());
    let _ = writeln!(out, "maximal losing coalitions: {}", report.maximal_losing);
    let _ = writeln!(
        out,
        "lower={} upper={} exact={exact}",
        report.lower, report.upper
    );
    let witness: Vec<String> = report.witness_lower.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        out,
        "lower witness ({}): {}",
        if report.clique_is_maximum { "maximum clique" } else { "greedy clique" },
        witness.join(",")
    );
    let _ = writeln!(out, "upper witness ({} parts):", report.witness_upper.len());
    for part in report.witness_upper.parts() {
        let _ = writeln!(out, "  {part}");
    }
    if report.budget_exceeded {
        let _ = writeln!(out, "BUDGET EXCEEDED: bounds only");
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::k_subsets;
    use crate::hierarchical::{build, HierarchicalSpec, Kind};

    #[test]
    fn un_council_summary() {
        let permanent = Coalition::range(0, 5);
        let others = Coalition::range(5, 15);
        let g = SimpleGame::new(
            15,
            k_subsets(others, 4).into_iter().map(|x| x.union(permanent)),
        )
        .unwrap();
        let text = analyze(&g, AnalyzeOptions::default()).to_text();
        assert!(text.contains("WEIGHTED: yes; witness verifies; classes 5+10"), "{text}");
        assert!(text.contains("veto players: {0,1,2,3,4}"));
    }

    #[test]
    fn hierarchical_models_and_certificate() {
        let spec = HierarchicalSpec::new(Kind::Disjunctive, vec![2, 5], vec![2, 5]).unwrap();
        let g = build(&spec).unwrap();
        let r = analyze(
            &g,
            AnalyzeOptions {
                certificates: true,
                ..Default::default()
            },
        );
        assert_eq!(
            r.minimal_winning_models.as_deref(),
            Some(&["{2^5}".to_string(), "{1,2^4}".to_string(), "{1^2}".to_string()][..])
        );
        assert!(!r.weighted.holds);
        assert!(r.certificate.as_deref().unwrap().starts_with("CERT j=2"));
        let json: serde_json::Value = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(json["veto"], serde_json::json!([]));
        assert_eq!(json["weighted"]["holds"], serde_json::json!(false));
    }
}
