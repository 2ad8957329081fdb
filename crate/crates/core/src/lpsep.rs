//! Threshold separation with exact rational arithmetic.
//!
//! Every question here reduces to one linear feasibility problem: find
//! nonnegative weights `w` and a quota `q >= 1` with `w(X) >= q` on the
//! coalitions that must win and `w(Y) <= q - 1` on those that must lose.
//! Over the rationals strict separation and margin-one separation are the
//! same thing up to scaling.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coalition::{Coalition, EXHAUSTIVE_PLAYERS};
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::simplex::{feasible_point_lazy, Inequality};

/// Nonnegative weights and a quota: `X` wins iff `w(X) >= quota`.
///
/// A zero quota is admitted only as the representation of the game in which
/// every coalition wins; it keeps the weighted class closed under duality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedRep {
    weights: Vec<BigRational>,
    quota: BigRational,
}

impl WeightedRep {
    pub fn new(weights: Vec<BigRational>, quota: BigRational) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput("negative weight".into()));
        }
        if quota.is_negative() {
            return Err(Error::InvalidInput("negative quota".into()));
        }
        Ok(WeightedRep { weights, quota })
    }

    pub fn from_integers(weights: &[i64], quota: i64) -> Result<Self> {
        WeightedRep::new(
            weights.iter().map(|&w| int(w)).collect(),
            int(quota),
        )
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn quota(&self) -> &BigRational {
        &self.quota
    }

    pub fn num_players(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, x: Coalition) -> BigRational {
        x.members()
            .filter(|&p| p < self.weights.len())
            .fold(BigRational::zero(), |acc, p| acc + &self.weights[p])
    }

    pub fn wins(&self, x: Coalition) -> bool {
        self.weight_of(x) >= self.quota
    }

    /// The game this representation defines.
    pub fn game(&self) -> Result<SimpleGame> {
        let n = self.weights.len();
        if n <= EXHAUSTIVE_PLAYERS {
            return SimpleGame::from_predicate(n, |x| self.wins(x));
        }
        // Grow coalitions by descending weight; a minimal winning coalition
        // is found by depth-first search over sorted players.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|a, b| self.weights[*b].cmp(&self.weights[*a]));
        let mut out = Vec::new();
        self.collect_minimal(&order, 0, Coalition::EMPTY, BigRational::zero(), &mut out);
        SimpleGame::new(n, out)
    }

    fn collect_minimal(
        &self,
        order: &[usize],
        from: usize,
        current: Coalition,
        weight: BigRational,
        out: &mut Vec<Coalition>,
    ) {
        if weight >= self.quota {
            out.push(current);
            return;
        }
        let rest: BigRational = order[from..]
            .iter()
            .fold(BigRational::zero(), |a, &p| a + &self.weights[p]);
        if &weight + rest < self.quota {
            return;
        }
        for k in from..order.len() {
            let p = order[k];
            if self.weights[p].is_zero() {
                break;
            }
            let w = &weight + &self.weights[p];
            self.collect_minimal(order, k + 1, current.with(p), w, out);
        }
    }

    /// Same game with integer weights, by clearing denominators.
    pub fn to_integer_scale(&self) -> (Vec<BigInt>, BigInt) {
        let lcm = self
            .weights
            .iter()
            .chain(std::iter::once(&self.quota))
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = |v: &BigRational| (v * BigRational::from_integer(lcm.clone())).to_integer();
        (self.weights.iter().map(scale).collect(), scale(&self.quota))
    }
}

impl fmt::Display for WeightedRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rep(f, &self.quota, &self.weights)
    }
}

impl fmt::Debug for WeightedRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Weights and quota with `w(X) < q => losing` and `w(X) > q => winning`.
#[derive(Clone, PartialEq, Eq)]
pub struct RoughRep {
    weights: Vec<BigRational>,
    quota: BigRational,
}

impl RoughRep {
    pub fn new(weights: Vec<BigRational>, quota: BigRational) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput("negative weight".into()));
        }
        if quota.is_zero() && weights.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("weights and quota all zero".into()));
        }
        Ok(RoughRep { weights, quota })
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn quota(&self) -> &BigRational {
        &self.quota
    }

    pub fn weight_of(&self, x: Coalition) -> BigRational {
        x.members()
            .filter(|&p| p < self.weights.len())
            .fold(BigRational::zero(), |acc, p| acc + &self.weights[p])
    }
}

impl fmt::Display for RoughRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rep(f, &self.quota, &self.weights)
    }
}

impl fmt::Debug for RoughRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_rep(f: &mut fmt::Formatter<'_>, quota: &BigRational, weights: &[BigRational]) -> fmt::Result {
    write!(f, "[{};", fmt_rational(quota))?;
    for (i, w) in weights.iter().enumerate() {
        let sep = if i == 0 { " " } else { ", " };
        write!(f, "{sep}{}", fmt_rational(w))?;
    }
    f.write_str("]")
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn fmt_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `1.1`, exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole_digits}{frac}");
        let mut numer: BigInt = digits.parse().ok()?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(numer, denom));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn indicator_row(n: usize, x: Coalition, sign: i64, extra: Option<i64>) -> Vec<i64> {
    let mut row = vec![0; n + usize::from(extra.is_some())];
    for p in x.members() {
        row[p] = sign;
    }
    if let Some(e) = extra {
        row[n] = e;
    }
    row
}

/// Weights making every superset of a `must_win` coalition win and every
/// `must_lose` coalition lose, with `w(Y) <= q - 1` on the latter.
///
/// `None` means no such weighted game exists. Infeasibility is an answer,
/// not an error.
pub fn separable(n: usize, must_win: &[Coalition], must_lose: &[Coalition]) -> Option<WeightedRep> {
    if must_win.iter().any(|c| c.is_empty()) {
        // Only the all-winning game makes the empty coalition win.
        return must_lose
            .is_empty()
            .then(|| WeightedRep {
                weights: vec![BigRational::zero(); n],
                quota: BigRational::zero(),
            });
    }
    // Variables w_0..w_{n-1}, q.
    let mut fixed: Vec<Inequality> = must_lose
        .iter()
        .map(|y| Inequality::new(indicator_row(n, *y, 1, Some(-1)), -1))
        .collect();
    let mut q_row = vec![0; n + 1];
    q_row[n] = -1;
    fixed.push(Inequality::new(q_row, -1));
    let lazy: Vec<Inequality> = must_win
        .iter()
        .map(|x| Inequality::new(indicator_row(n, *x, -1, Some(1)), 0))
        .collect();
    let mut x = feasible_point_lazy(n + 1, &fixed, &lazy)?;
    let quota = x.pop().expect("quota variable");
    Some(WeightedRep { weights: x, quota })
}

/// A weighted representation of `g`, if it has one.
pub fn is_weighted(g: &SimpleGame) -> Option<WeightedRep> {
    separable(g.num_players(), g.min_winning(), &g.maximal_losing())
}

/// A rough representation of `g`, if it has one.
///
/// Positive quotas scale to `q = 1`, solved as one feasibility problem. A
/// zero quota forces zero weight on every player of a losing coalition, so
/// it works exactly when some singleton wins. A negative quota makes every
/// coalition win.
pub fn is_roughly_weighted(g: &SimpleGame) -> Option<RoughRep> {
    let n = g.num_players();
    if g.is_all_winning() {
        return Some(RoughRep {
            weights: vec![BigRational::zero(); n],
            quota: -BigRational::one(),
        });
    }
    let lmax = g.maximal_losing();
    let rows: Vec<Inequality> = g
        .min_winning()
        .iter()
        .map(|m| Inequality::new(indicator_row(n, *m, -1, None), -1))
        .chain(
            lmax.iter()
                .map(|y| Inequality::new(indicator_row(n, *y, 1, None), 1)),
        )
        .collect();
    if let Some(w) = feasible_point_lazy(n, &[], &rows) {
        return Some(RoughRep {
            weights: w,
            quota: BigRational::one(),
        });
    }
    let winner = g.min_winning().iter().find(|m| m.len() == 1)?;
    let p = winner.members().next().expect("singleton");
    let mut weights = vec![BigRational::zero(); n];
    weights[p] = BigRational::one();
    Some(RoughRep {
        weights,
        quota: BigRational::zero(),
    })
}

/// Integer subset sums of every coalition, when the scaled weights fit.
fn exhaustive_sums(weights: &[BigInt]) -> Option<Vec<i128>> {
    let n = weights.len();
    if n > EXHAUSTIVE_PLAYERS {
        return None;
    }
    let small: Vec<i128> = weights
        .iter()
        .map(|w| w.to_i64().map(i128::from))
        .collect::<Option<_>>()?;
    let mut sums = vec![0i128; 1 << n];
    for x in 1..sums.len() {
        let low = x.trailing_zeros() as usize;
        sums[x] = sums[x & (x - 1)] + small[low];
    }
    Some(sums)
}

/// Checks `rep` against `g` coalition by coalition when `n` is small, and
/// on the minimal winning and maximal losing antichains otherwise.
pub fn verify_representation(g: &SimpleGame, rep: &WeightedRep) -> bool {
    if rep.num_players() != g.num_players() {
        return false;
    }
    if let Ok(table) = g.winning_table() {
        let (w, q) = rep.to_integer_scale();
        if let (Some(sums), Some(q)) = (exhaustive_sums(&w), q.to_i128()) {
            return table
                .iter()
                .zip(&sums)
                .all(|(&wins, &s)| wins == (s >= q));
        }
    }
    verify_on_antichains(g, rep)
}

/// Exact check on the antichains; sufficient because weights are
/// nonnegative, so winning is upward closed under every weighting.
pub fn verify_on_antichains(g: &SimpleGame, rep: &WeightedRep) -> bool {
    rep.num_players() == g.num_players()
        && g.min_winning().iter().all(|m| rep.wins(*m))
        && g.maximal_losing().iter().all(|y| !rep.wins(*y))
}

pub fn verify_rough_representation(g: &SimpleGame, rep: &RoughRep) -> bool {
    if rep.weights.len() != g.num_players() {
        return false;
    }
    if rep.quota.is_zero() && rep.weights.iter().all(Zero::is_zero) {
        return false;
    }
    if let Ok(table) = g.winning_table() {
        return table.iter().enumerate().all(|(x, &wins)| {
            let w = rep.weight_of(Coalition::from_bits(x as u64));
            !(w < rep.quota && wins) && !(w > rep.quota && !wins)
        });
    }
    g.min_winning().iter().all(|m| rep.weight_of(*m) >= rep.quota)
        && g.maximal_losing().iter().all(|y| rep.weight_of(*y) <= rep.quota)
}
