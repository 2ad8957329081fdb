//! Line-oriented game files.
//!
//! ```text
//! sg 1
//! # comment
//! n 5
//! w 0 1 2
//! w 0 3
//! ```
//!
//! Instead of `w` lines a file may carry one `hier <disj|conj> n=<list>
//! k=<list>` line or one `formula <expr>` line. The `n` line is required
//! for `w` files and optional otherwise, where it must agree with the
//! body. Players are 0-based. Errors carry 1-based line and column.

use std::fmt;

use crate::boolean::{formula_game, parse_formula, BoolFormula};
use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::hierarchical::{build, HierarchicalSpec, Kind};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameSource {
    MinWinning(Vec<Coalition>),
    Hierarchical(HierarchicalSpec),
    Formula(BoolFormula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFile {
    pub version: u32,
    pub num_players: usize,
    pub source: GameSource,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// 1-based column of `word` inside `line`, which it must be a slice of.
fn column_of(line: &str, word: &str) -> usize {
    word.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_usize_list(text: &str) -> Option<Vec<usize>> {
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Parses `<kind> n=<list> k=<list>` with `line`/`offset` for errors.
fn parse_hier(line_no: usize, line: &str, words: &[&str]) -> Result<HierarchicalSpec> {
    let at = |w: &str| column_of(line, w);
    let [kind, sizes, thresholds] = words else {
        let col = words.first().map_or(line.len() + 1, |w| at(w));
        return Err(err(line_no, col, "expected 'hier <disj|conj> n=<list> k=<list>'"));
    };
    let kind_v = Kind::parse(kind).ok_or_else(|| err(line_no, at(kind), format!("unknown kind '{kind}'")))?;
    let list = |w: &str, key: &str| {
        w.strip_prefix(key)
            .and_then(parse_usize_list)
            .ok_or_else(|| err(line_no, at(w), format!("expected '{key}<comma-separated integers>'")))
    };
    let sizes_v = list(sizes, "n=")?;
    let thresholds_v = list(thresholds, "k=")?;
    HierarchicalSpec::new(kind_v, sizes_v, thresholds_v).map_err(|e| err(line_no, at(kind), e.to_string()))
}

impl GameFile {
    pub fn parse(text: &str) -> Result<GameFile> {
        let mut version = None;
        let mut declared_n: Option<(usize, usize)> = None;
        let mut coalitions: Vec<(usize, Coalition, usize)> = Vec::new();
        let mut body: Option<(usize, GameSource)> = None;
        let mut last_line = 1;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some(&key) = words.first() else { continue };
            let col = column_of(raw, key);
            if version.is_none() {
                if key != "sg" {
                    return Err(err(line_no, col, "expected header 'sg 1'"));
                }
                let v = words
                    .get(1)
                    .and_then(|w| w.parse::<u32>().ok())
                    .filter(|v| *v == FORMAT_VERSION)
                    .ok_or_else(|| err(line_no, col, format!("unsupported version; expected 'sg {FORMAT_VERSION}'")))?;
                if words.len() > 2 {
                    return Err(err(line_no, column_of(raw, words[2]), "trailing text after header"));
                }
                version = Some(v);
                continue;
            }
            match key {
                "n" => {
                    if declared_n.is_some() {
                        return Err(err(line_no, col, "duplicate 'n' line"));
                    }
                    let [_, value] = words.as_slice() else {
                        return Err(err(line_no, col, "expected 'n <players>'"));
                    };
                    let n: usize = value
                        .parse()
                        .map_err(|_| err(line_no, column_of(raw, value), "player count must be an integer"))?;
                    if n > MAX_PLAYERS {
                        return Err(err(line_no, column_of(raw, value), format!("at most {MAX_PLAYERS} players")));
                    }
                    declared_n = Some((n, line_no));
                }
                "w" => {
                    if body.is_some() {
                        return Err(err(line_no, col, "'w' lines cannot follow 'hier' or 'formula'"));
                    }
                    let mut c = Coalition::EMPTY;
                    for w in &words[1..] {
                        let p: usize = w
                            .parse()
                            .map_err(|_| err(line_no, column_of(raw, w), format!("bad player '{w}'")))?;
                        if p >= MAX_PLAYERS {
                            return Err(err(line_no, column_of(raw, w), format!("player {p} out of range")));
                        }
                        c = c.with(p);
                    }
                    let last_col = words.last().map_or(col, |w| column_of(raw, w));
                    coalitions.push((line_no, c, last_col));
                }
                "hier" | "formula" => {
                    if body.is_some() || !coalitions.is_empty() {
                        return Err(err(line_no, col, "a file describes exactly one game"));
                    }
                    let source = if key == "hier" {
                        GameSource::Hierarchical(parse_hier(line_no, raw, &words[1..])?)
                    } else {
                        let rest_start = col - 1 + key.len();
                        let expr = &content[rest_start..];
                        let f = parse_formula(expr).map_err(|e| match e {
                            Error::Parse { column, message, .. } => err(line_no, rest_start + column, message),
                            other => err(line_no, col, other.to_string()),
                        })?;
                        GameSource::Formula(f)
                    };
                    body = Some((line_no, source));
                }
                other => return Err(err(line_no, col, format!("unknown directive '{other}'"))),
            }
        }

        let Some(version) = version else {
            return Err(err(last_line, 1, "empty input; expected header 'sg 1'"));
        };
        let (num_players, source) = match body {
            Some((line_no, source)) => {
                let n = match &source {
                    GameSource::Hierarchical(spec) => spec.num_players(),
                    GameSource::Formula(f) => f.num_players()?,
                    GameSource::MinWinning(_) => unreachable!(),
                };
                if let Some((declared, n_line)) = declared_n {
                    if declared != n {
                        return Err(err(
                            n_line.max(line_no),
                            1,
                            format!("'n {declared}' disagrees with {n} players in the game body"),
                        ));
                    }
                }
                (n, source)
            }
            None => {
                let Some((n, _)) = declared_n else {
                    return Err(err(last_line, 1, "missing 'n <players>' line"));
                };
                for (line_no, c, col) in &coalitions {
                    if !c.fits(n) {
                        return Err(err(*line_no, *col, format!("player outside 0..{n}")));
                    }
                }
                (n, GameSource::MinWinning(coalitions.into_iter().map(|(_, c, _)| c).collect()))
            }
        };
        Ok(GameFile {
            version,
            num_players,
            source,
        })
    }

    pub fn game(&self) -> Result<SimpleGame> {
        match &self.source {
            GameSource::MinWinning(list) => SimpleGame::new(self.num_players, list.iter().copied()),
            GameSource::Hierarchical(spec) => build(spec),
            GameSource::Formula(f) => formula_game(f),
        }
    }

    pub fn from_game(g: &SimpleGame) -> GameFile {
        GameFile {
            version: FORMAT_VERSION,
            num_players: g.num_players(),
            source: GameSource::MinWinning(g.min_winning().to_vec()),
        }
    }

    pub fn from_spec(spec: HierarchicalSpec) -> GameFile {
        GameFile {
            version: FORMAT_VERSION,
            num_players: spec.num_players(),
            source: GameSource::Hierarchical(spec),
        }
    }
}

impl fmt::Display for GameFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sg {}", self.version)?;
        writeln!(f, "n {}", self.num_players)?;
        match &self.source {
            GameSource::MinWinning(list) => {
                let mut sorted = list.clone();
                sorted.sort();
                for c in sorted {
                    f.write_str("w")?;
                    for p in c.members() {
                        write!(f, " {p}")?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
            GameSource::Hierarchical(spec) => writeln!(f, "hier {spec}"),
            GameSource::Formula(expr) => writeln!(f, "formula {expr}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, usize) {
        match GameFile::parse(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn explicit_game() {
        let text = "sg 1\n# majority of three\nn 3\nw 0 1\nw 0 2  # trailing comment\nw 1 2\nw 0 1 2\n";
        let file = GameFile::parse(text).unwrap();
        let g = file.game().unwrap();
        assert_eq!(g.min_winning().len(), 3);
        assert_eq!(file.to_string(), "sg 1\nn 3\nw 0 1\nw 0 2\nw 1 2\nw 0 1 2\n");
        let again = GameFile::from_game(&g);
        assert_eq!(again.to_string(), "sg 1\nn 3\nw 0 1\nw 0 2\nw 1 2\n");
    }

    #[test]
    fn hierarchical_and_formula_bodies() {
        let file = GameFile::parse("sg 1\nhier disj n=2,5 k=2,5\n").unwrap();
        assert_eq!(file.num_players, 7);
        assert_eq!(file.to_string(), "sg 1\nn 7\nhier disj n=2,5 k=2,5\n");
        assert_eq!(GameFile::parse(&file.to_string()).unwrap(), file);

        let file = GameFile::parse("sg 1\nformula OR(WG(1; 1, 0), WG(2; 1, 1))\n").unwrap();
        assert_eq!(file.game().unwrap().min_winning(), &[Coalition::singleton(0)]);
    }

    #[test]
    fn all_winning_and_all_losing_round_trip() {
        let win = GameFile::parse("sg 1\nn 2\nw\n").unwrap().game().unwrap();
        assert!(win.is_all_winning());
        let text = GameFile::from_game(&win).to_string();
        assert_eq!(GameFile::parse(&text).unwrap().game().unwrap(), win);
        let lose = GameFile::parse("sg 1\nn 2\n").unwrap().game().unwrap();
        assert!(lose.is_all_losing());
    }

    #[test]
    fn errors_point_at_the_offending_token() {
        assert_eq!(parse_err(""), (1, 1));
        assert_eq!(parse_err("# only a comment\n"), (1, 1));
        assert_eq!(parse_err("sg 2\n"), (1, 1));
        assert_eq!(parse_err("sg 1\nn 3\nw 0 x\n"), (3, 5));
        assert_eq!(parse_err("sg 1\nn 3\nw 0 3\n"), (3, 5));
        assert_eq!(parse_err("sg 1\nn 3\n  bogus 1\n"), (3, 3));
        assert_eq!(parse_err("sg 1\nhier disj n=2,5 k=2\n"), (2, 6));
        assert_eq!(parse_err("sg 1\nhier xor n=2 k=1\n"), (2, 6));
        assert_eq!(parse_err("sg 1\nformula AND(WG(1; 1), XOR)\n"), (2, 23));
        assert_eq!(parse_err("sg 1\nw 0\n"), (2, 1));
        assert_eq!(parse_err("sg 1\nn 3\nhier disj n=2,5 k=2,5\n"), (3, 1));
        assert_eq!(parse_err("sg 1\nn 99\n"), (2, 3));
    }
}
