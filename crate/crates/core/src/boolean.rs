//! Monotone formulas over weighted games.
//!
//! Text syntax: `AND(f, ...)`, `OR(f, ...)` and leaves `WG(q; w1, ..., wn)`
//! with integer, `p/q` or finite decimal literals.

use std::fmt;

use crate::coalition::{Coalition, EXHAUSTIVE_PLAYERS};
use crate::error::{check_player_cap, Error, Result};
use crate::game::SimpleGame;
use crate::lpsep::{is_weighted, parse_rational, WeightedRep};

#[derive(Clone, PartialEq, Eq)]
pub enum BoolFormula {
    Leaf(WeightedRep),
    And(Vec<BoolFormula>),
    Or(Vec<BoolFormula>),
}

impl BoolFormula {
    pub fn leaf(rep: WeightedRep) -> Self {
        BoolFormula::Leaf(rep)
    }

    /// Player count shared by all leaves.
    pub fn num_players(&self) -> Result<usize> {
        let mut n = None;
        self.check(&mut n)?;
        Ok(n.expect("at least one leaf"))
    }

    fn check(&self, n: &mut Option<usize>) -> Result<()> {
        match self {
            BoolFormula::Leaf(rep) => match *n {
                None => {
                    *n = Some(rep.num_players());
                    Ok(())
                }
                Some(m) if m == rep.num_players() => Ok(()),
                Some(m) => Err(Error::InvalidInput(format!(
                    "leaf over {} players in a formula over {m}",
                    rep.num_players()
                ))),
            },
            BoolFormula::And(cs) | BoolFormula::Or(cs) => {
                if cs.is_empty() {
                    return Err(Error::InvalidInput("connective without operands".into()));
                }
                cs.iter().try_for_each(|c| c.check(n))
            }
        }
    }

    pub fn leaves(&self) -> Vec<&WeightedRep> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a WeightedRep>) {
        match self {
            BoolFormula::Leaf(rep) => out.push(rep),
            BoolFormula::And(cs) | BoolFormula::Or(cs) => {
                cs.iter().for_each(|c| c.collect_leaves(out))
            }
        }
    }
}

pub fn eval_formula(f: &BoolFormula, x: Coalition) -> bool {
    match f {
        BoolFormula::Leaf(rep) => rep.wins(x),
        BoolFormula::And(cs) => cs.iter().all(|c| eval_formula(c, x)),
        BoolFormula::Or(cs) => cs.iter().any(|c| eval_formula(c, x)),
    }
}

/// The game the formula defines, by scanning every coalition.
pub fn formula_game(f: &BoolFormula) -> Result<SimpleGame> {
    let n = f.num_players()?;
    check_player_cap(n, EXHAUSTIVE_PLAYERS)?;
    SimpleGame::from_predicate(n, |x| eval_formula(f, x))
}

/// Number of leaf occurrences.
pub fn formula_size(f: &BoolFormula) -> usize {
    match f {
        BoolFormula::Leaf(_) => 1,
        BoolFormula::And(cs) | BoolFormula::Or(cs) => cs.iter().map(formula_size).sum(),
    }
}

/// De Morgan dual: connectives swapped, every leaf replaced by a weighted
/// representation of its dual game.
pub fn formula_dual(f: &BoolFormula) -> Result<BoolFormula> {
    Ok(match f {
        BoolFormula::Leaf(rep) => {
            let dual = rep.game()?.dual();
            let dual_rep = is_weighted(&dual).ok_or_else(|| {
                Error::Precondition(format!("dual of leaf {rep} has no weighted representation"))
            })?;
            BoolFormula::Leaf(dual_rep)
        }
        BoolFormula::And(cs) => BoolFormula::Or(cs.iter().map(formula_dual).collect::<Result<_>>()?),
        BoolFormula::Or(cs) => BoolFormula::And(cs.iter().map(formula_dual).collect::<Result<_>>()?),
    })
}

/// True iff the formula defines exactly `g`.
pub fn verify_boolean_rep(g: &SimpleGame, f: &BoolFormula) -> bool {
    match f.num_players() {
        Ok(n) if n == g.num_players() => {}
        _ => return false,
    }
    if let Ok(table) = g.winning_table() {
        return table
            .iter()
            .enumerate()
            .all(|(x, &w)| w == eval_formula(f, Coalition::from_bits(x as u64)));
    }
    // Both sides are monotone, so agreement on the antichains of `g` is
    // necessary; it is also sufficient once the formula's minimal winning
    // coalitions are known to be winning in `g`, which holds when the
    // formula rejects every maximal losing coalition of `g`.
    g.min_winning().iter().all(|m| eval_formula(f, *m))
        && g.maximal_losing().iter().all(|y| !eval_formula(f, *y))
}

/// Conjunction of the given parts.
pub fn and_of(parts: &[WeightedRep]) -> BoolFormula {
    BoolFormula::And(parts.iter().cloned().map(BoolFormula::Leaf).collect())
}

/// `G_1 ∨ (G_2 ∧ G_3)` with cumulative-count leaves over classes of the
/// given sizes.
pub fn delta1_formula(sizes: [usize; 3], thresholds: [usize; 3]) -> Result<BoolFormula> {
    crate::hierarchical::check_delta1(sizes, thresholds)?;
    let n: usize = sizes.iter().sum();
    let leaf = |classes: usize, quota: usize| {
        let upto: usize = sizes[..classes].iter().sum();
        let w: Vec<i64> = (0..n).map(|p| i64::from(p < upto)).collect();
        WeightedRep::from_integers(&w, quota as i64).map(BoolFormula::Leaf)
    };
    Ok(BoolFormula::Or(vec![
        leaf(1, thresholds[0])?,
        BoolFormula::And(vec![leaf(2, thresholds[1])?, leaf(3, thresholds[2])?]),
    ]))
}

impl fmt::Display for BoolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolFormula::Leaf(rep) => {
                let s = rep.to_string();
                // "[q; w..]" -> "WG(q; w..)"
                write!(f, "WG({})", &s[1..s.len() - 1])
            }
            BoolFormula::And(cs) | BoolFormula::Or(cs) => {
                f.write_str(if matches!(self, BoolFormula::And(_)) { "AND(" } else { "OR(" })?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for BoolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the text syntax. Error columns are 1-based character offsets.
pub fn parse_formula(text: &str) -> Result<BoolFormula> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("trailing input after formula"));
    }
    f.num_players()?;
    Ok(f)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).to_ascii_uppercase()
    }

    fn number(&mut self) -> Result<num_rational::BigRational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_digit() || b"/.-+".contains(&self.s[self.pos]))
        {
            self.pos += 1;
        }
        let lit = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        parse_rational(lit).ok_or_else(|| {
            self.pos = start;
            self.error(&format!("bad number literal '{lit}'"))
        })
    }

    fn formula(&mut self) -> Result<BoolFormula> {
        let start = self.pos;
        let head = self.word();
        match head.as_str() {
            "AND" | "OR" => {
                self.expect(b'(')?;
                let mut cs = vec![self.formula()?];
                while self.eat(b',') {
                    cs.push(self.formula()?);
                }
                self.expect(b')')?;
                Ok(if head == "AND" {
                    BoolFormula::And(cs)
                } else {
                    BoolFormula::Or(cs)
                })
            }
            "WG" => {
                self.expect(b'(')?;
                let quota = self.number()?;
                self.expect(b';')?;
                let mut weights = vec![self.number()?];
                while self.eat(b',') {
                    weights.push(self.number()?);
                }
                self.expect(b')')?;
                WeightedRep::new(weights, quota)
                    .map(BoolFormula::Leaf)
                    .map_err(|e| self.error(&e.to_string()))
            }
            _ => {
                self.pos = start;
                self.skip_ws();
                Err(self.error("expected AND, OR or WG"))
            }
        }
    }
}
