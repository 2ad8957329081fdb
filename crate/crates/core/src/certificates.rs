//! Trading transforms and certificates of non-weightedness.

use std::fmt;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::hierarchical::{
    dummy_players, os3_pair, os3_spec, os3_witness, validate_partiteness, HierarchicalSpec, Kind,
};

/// Default longest certificate tried by [`find_certificate`].
pub const DEFAULT_MAX_LEN: usize = 4;

/// Two equal-length coalition sequences `(X_1..X_j; Y_1..Y_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TradingTransform {
    pre: Vec<Coalition>,
    post: Vec<Coalition>,
}

impl TradingTransform {
    pub fn new(pre: Vec<Coalition>, post: Vec<Coalition>) -> Result<Self> {
        if pre.len() != post.len() {
            return Err(Error::InvalidInput(format!(
                "trading transform with {} coalitions before and {} after",
                pre.len(),
                post.len()
            )));
        }
        if pre.is_empty() {
            return Err(Error::InvalidInput("empty trading transform".into()));
        }
        Ok(TradingTransform { pre, post })
    }

    pub fn pre(&self) -> &[Coalition] {
        &self.pre
    }

    pub fn post(&self) -> &[Coalition] {
        &self.post
    }

    pub fn len(&self) -> usize {
        self.pre.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pre.is_empty()
    }

    /// Both sides sorted canonically.
    pub fn canonical(mut self) -> Self {
        self.pre.sort();
        self.post.sort();
        self
    }

    /// Every player occurs equally often before and after.
    pub fn is_balanced(&self) -> bool {
        let mut counts = [0i64; 64];
        for x in &self.pre {
            for p in x.members() {
                counts[p] += 1;
            }
        }
        for y in &self.post {
            for p in y.members() {
                counts[p] -= 1;
            }
        }
        counts.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for TradingTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Coalition]| {
            v.iter()
                .map(Coalition::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "CERT j={}: WIN {} | LOSE {}",
            self.len(),
            list(&self.pre),
            list(&self.post)
        )
    }
}

impl fmt::Debug for TradingTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn verify_trading_transform(pre: &[Coalition], post: &[Coalition]) -> Result<bool> {
    Ok(TradingTransform::new(pre.to_vec(), post.to_vec())?.is_balanced())
}

/// True iff `tt` has only winning coalitions before and only losing ones
/// after. Unbalanced transforms are rejected as invalid input.
pub fn verify_certificate(g: &SimpleGame, tt: &TradingTransform) -> Result<bool> {
    if !tt.is_balanced() {
        return Err(Error::InvalidInput("trading transform is not balanced".into()));
    }
    if tt
        .pre
        .iter()
        .chain(&tt.post)
        .any(|c| !c.fits(g.num_players()))
    {
        return Err(Error::InvalidInput("coalition outside the player set".into()));
    }
    Ok(tt.pre.iter().all(|x| g.is_winning(*x)) && tt.post.iter().all(|y| !g.is_winning(*y)))
}

/// Searches certificates of length `2..=max_len`, shortest first.
///
/// The winning side may be taken minimal: shrinking a winning coalition and
/// dropping the same players from losing ones keeps a certificate valid. So
/// the search runs over multisets of minimal winning coalitions and asks
/// whether their player counts split into losing coalitions.
///
/// `None` only rules out certificates up to `max_len`.
pub fn find_certificate(g: &SimpleGame, max_len: usize) -> Option<TradingTransform> {
    let mw = g.min_winning();
    if mw.is_empty() || g.is_all_winning() {
        return None;
    }
    let n = g.num_players();
    for len in 2..=max_len {
        let mut chosen = Vec::with_capacity(len);
        if let Some(tt) = search_multisets(g, n, mw, len, 0, &mut chosen) {
            return Some(tt.canonical());
        }
    }
    None
}

fn search_multisets(
    g: &SimpleGame,
    n: usize,
    mw: &[Coalition],
    len: usize,
    start: usize,
    chosen: &mut Vec<Coalition>,
) -> Option<TradingTransform> {
    if chosen.len() == len {
        let mut counts = vec![0usize; n];
        for x in chosen.iter() {
            for p in x.members() {
                counts[p] += 1;
            }
        }
        let mut parts = Vec::with_capacity(len);
        if split_into_losing(g, &mut counts, len, Coalition::full(n), &mut parts) {
            return Some(TradingTransform {
                pre: chosen.clone(),
                post: parts,
            });
        }
        return None;
    }
    for i in start..mw.len() {
        chosen.push(mw[i]);
        let found = search_multisets(g, n, mw, len, i, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Splits the multiset `counts` into `slots` losing coalitions. `bound` is
/// the previously chosen coalition; parts are produced in non-increasing
/// mask order to avoid permuted duplicates.
fn split_into_losing(
    g: &SimpleGame,
    counts: &mut [usize],
    slots: usize,
    bound: Coalition,
    parts: &mut Vec<Coalition>,
) -> bool {
    if slots == 0 {
        return counts.iter().all(|&c| c == 0);
    }
    let mut forced = Coalition::EMPTY;
    let mut optional = Coalition::EMPTY;
    for (p, &c) in counts.iter().enumerate() {
        if c > slots {
            return false;
        }
        if c == slots {
            forced = forced.with(p);
        } else if c > 0 {
            optional = optional.with(p);
        }
    }
    if g.is_winning(forced) {
        return false;
    }
    // Enumerate subsets of `optional`, largest masks first.
    let opt = optional.bits();
    let mut sub = opt;
    loop {
        let part = forced.union(Coalition::from_bits(sub));
        if part.bits() <= bound.bits() && !g.is_winning(part) {
            for p in part.members() {
                counts[p] -= 1;
            }
            parts.push(part);
            if split_into_losing(g, counts, slots - 1, part, parts) {
                return true;
            }
            parts.pop();
            for p in part.members() {
                counts[p] += 1;
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & opt;
    }
    false
}

/// A length-two certificate whose losing side is exactly `(y1, y2)`.
///
/// Balance forces `X_1 + X_2 = y1 + y2` as multisets, so the search splits
/// the symmetric difference between the two winning coalitions. A `None`
/// does not prove the pair compatible; that verdict belongs to the
/// separation oracle.
pub fn pair_incompatibility_certificate(
    g: &SimpleGame,
    y1: Coalition,
    y2: Coalition,
) -> Result<Option<TradingTransform>> {
    for y in [y1, y2] {
        if !y.fits(g.num_players()) {
            return Err(Error::InvalidInput(format!("coalition {y} outside the player set")));
        }
        if g.is_winning(y) {
            return Err(Error::Precondition(format!("coalition {y} is winning")));
        }
    }
    let common = y1.intersection(y2);
    let split = y1.union(y2).difference(common);
    let bits = split.bits();
    let mut sub = bits;
    loop {
        let x1 = common.union(Coalition::from_bits(sub));
        let x2 = common.union(Coalition::from_bits(bits & !sub));
        if x1.bits() >= x2.bits() && g.is_winning(x1) && g.is_winning(x2) {
            let tt = TradingTransform {
                pre: vec![x1, x2],
                post: vec![y1, y2],
            };
            return Ok(Some(tt.canonical()));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    Ok(None)
}

/// Certificate for two members of the witness set of [`os3_witness_set`],
/// given by their index tuples.
///
/// With equal first indices, one player of the first class where the
/// tuples differ is traded for a pair of a later differing class. With
/// different first indices, the head player of the second coalition is
/// traded for a pair of a differing class.
///
/// [`os3_witness_set`]: crate::hierarchical::os3_witness_set
pub fn witness_pair_certificate(k: usize, m: usize, a: &[usize], b: &[usize]) -> Result<TradingTransform> {
    let spec = os3_spec(k, m)?;
    if a.len() != m - 1 || b.len() != m - 1 || a.iter().chain(b).any(|&i| i >= k) {
        return Err(Error::InvalidInput(format!(
            "index tuples must have {} entries below {k}",
            m - 1
        )));
    }
    if a == b {
        return Err(Error::InvalidInput("a coalition is not incompatible with itself".into()));
    }
    let full = |t: &[usize]| {
        let mut v = t.to_vec();
        v.push(t.iter().sum::<usize>() % k);
        v
    };
    let (fa, fb) = (full(a), full(b));
    let y1 = os3_witness(&spec, k, a);
    let y2 = os3_witness(&spec, k, b);
    let differing: Vec<usize> = (1..m).filter(|&c| fa[c] != fb[c]).collect();
    let head = spec.class(0).members().next().expect("nonempty class");
    let (give, take) = if fa[0] == fb[0] {
        // The derived last index forces at least two differing classes.
        let (l, r) = (differing[0], differing[1]);
        let single = os3_pair(&spec, l, fb[l]).members().next().expect("pair");
        (Coalition::singleton(single), os3_pair(&spec, r, fa[r]))
    } else {
        let r = differing[0];
        (Coalition::singleton(head + fb[0]), os3_pair(&spec, r, fa[r]))
    };
    let x1 = y1.union(give).difference(take);
    let x2 = y2.difference(give).union(take);
    Ok(TradingTransform::new(vec![x1, x2], vec![y1, y2])?.canonical())
}

/// Certificate built from lowest-index representatives of the
/// shift-maximal losing models `M_low` and `M_high` (0-based classes,
/// `high >= low + 2`) of a conjunctive game without dummies.
///
/// One player moves from the second coalition to the first and two players
/// of class `high` move back, making both coalitions win.
pub fn conjunctive_transfer_certificate(
    spec: &HierarchicalSpec,
    low: usize,
    high: usize,
) -> Result<TradingTransform> {
    if spec.kind() != Kind::Conjunctive {
        return Err(Error::Precondition("needs a conjunctive spec".into()));
    }
    if !validate_partiteness(spec)?.true_m_partite {
        return Err(Error::Precondition("spec is not truly partite".into()));
    }
    let m = spec.num_classes();
    if !dummy_players(spec)?.is_empty() {
        return Err(Error::Precondition("spec has a dummy class".into()));
    }
    if high >= m || high < low + 2 {
        return Err(Error::InvalidInput(format!(
            "need low + 2 <= high < {m}, got low={low} high={high}"
        )));
    }
    let (n, k) = (spec.sizes(), spec.thresholds());
    let model = |i: usize| -> Result<Vec<usize>> {
        let mut remaining = k[i] - 1;
        let mut counts = vec![0; m];
        for t in 0..=i {
            counts[t] = remaining.min(n[t]);
            remaining -= counts[t];
        }
        if remaining > 0 || counts[i] >= n[i] {
            return Err(Error::Precondition(format!("model {} does not exist", i + 1)));
        }
        counts[i + 1..].copy_from_slice(&n[i + 1..]);
        Ok(counts)
    };
    let (c, d) = (model(low)?, model(high)?);
    let l1 = spec.representative(&c);
    let l2 = spec.representative(&d);
    let last_nonempty = (0..=high).rev().find(|&t| d[t] > 0).expect("k_high >= 2");
    let donor = if last_nonempty <= low { last_nonempty } else { low };
    let x = spec
        .class(donor)
        .intersection(l2)
        .difference(l1)
        .members()
        .next()
        .ok_or_else(|| Error::Precondition("no player to transfer".into()))?;
    let back: Vec<usize> = spec.class(high).difference(l2).members().take(2).collect();
    if back.len() < 2 {
        return Err(Error::Precondition("fewer than two players to move back".into()));
    }
    let yz = Coalition::from_members(back);
    let x1 = l1.with(x).difference(yz);
    let x2 = l2.without(x).union(yz);
    TradingTransform::new(vec![x1, x2], vec![l1, l2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::k_subsets;

    fn majority5() -> SimpleGame {
        SimpleGame::new(5, k_subsets(Coalition::full(5), 3)).unwrap()
    }

    fn c(members: &[usize]) -> Coalition {
        Coalition::from_members(members.iter().copied())
    }

    #[test]
    fn balance_checks() {
        assert!(verify_trading_transform(&[c(&[0, 1]), c(&[2, 3, 4, 5])], &[c(&[0, 2, 3]), c(&[1, 4, 5])]).unwrap());
        assert!(verify_trading_transform(&[c(&[1, 3])], &[c(&[1, 3])]).unwrap());
        assert!(!verify_trading_transform(&[c(&[0]), c(&[1])], &[c(&[0]), c(&[0])]).unwrap());
        assert!(verify_trading_transform(&[c(&[0])], &[]).is_err());
    }

    #[test]
    fn unbalanced_certificate_is_invalid_input() {
        let g = majority5();
        let tt = TradingTransform::new(vec![c(&[0]), c(&[1])], vec![c(&[0]), c(&[0])]).unwrap();
        assert!(matches!(verify_certificate(&g, &tt), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn weighted_game_has_no_certificate() {
        let g = majority5();
        assert!(find_certificate(&g, 4).is_none());
        let r = pair_incompatibility_certificate(&g, c(&[0, 1]), c(&[2, 3])).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn winning_pair_member_is_a_precondition_error() {
        let g = majority5();
        let r = pair_incompatibility_certificate(&g, c(&[0, 1, 2]), c(&[3]));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn two_disjoint_pairs_certificate() {
        let g = SimpleGame::new(4, [c(&[0, 1]), c(&[2, 3])]).unwrap();
        let tt = find_certificate(&g, 2).unwrap();
        assert_eq!(tt.len(), 2);
        assert!(verify_certificate(&g, &tt).unwrap());
        assert_eq!(tt.to_string(), "CERT j=2: WIN {0,1},{2,3} | LOSE {0,2},{1,3}");
    }

    #[test]
    fn balance_survives_permuting_one_side() {
        let tt = TradingTransform::new(
            vec![c(&[0, 1]), c(&[2, 3, 4, 5])],
            vec![c(&[0, 2, 3]), c(&[1, 4, 5])],
        )
        .unwrap();
        let swapped = TradingTransform::new(tt.pre().to_vec(), tt.post().iter().rev().copied().collect()).unwrap();
        assert!(swapped.is_balanced());
    }

    #[test]
    fn witness_pairs_are_certified() {
        use crate::hierarchical::{build, os3_indices};
        for (k, m) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let g = build(&os3_spec(k, m).unwrap()).unwrap();
            let idx = os3_indices(k, m);
            for a in &idx {
                for b in &idx {
                    if a != b {
                        let tt = witness_pair_certificate(k, m, a, b).unwrap();
                        assert!(verify_certificate(&g, &tt).unwrap(), "k={k} m={m} {a:?} {b:?}");
                    }
                }
            }
        }
        assert!(witness_pair_certificate(2, 2, &[0], &[0]).is_err());
    }

    #[test]
    fn two_class_witness_certificate_matches_head_and_tail_split() {
        // Y_0 = {0,2,3}, Y_1 = {1,4,5}: heads win together, tails win together.
        let tt = witness_pair_certificate(2, 2, &[0], &[1]).unwrap();
        assert_eq!(tt.to_string(), "CERT j=2: WIN {0,1},{2,3,4,5} | LOSE {0,2,3},{1,4,5}");
    }

    #[test]
    fn conjunctive_transfer() {
        use crate::hierarchical::build;
        let spec = HierarchicalSpec::new(Kind::Conjunctive, vec![4, 4, 4], vec![2, 4, 7]).unwrap();
        let tt = conjunctive_transfer_certificate(&spec, 0, 2).unwrap();
        assert_eq!(
            tt.to_string(),
            "CERT j=2: WIN {0,1,4,5,6,7,10,11},{0,2,3,4,5,8,9} | LOSE {0,4,5,6,7,8,9,10,11},{0,1,2,3,4,5}"
        );
        assert!(verify_certificate(&build(&spec).unwrap(), &tt).unwrap());
        assert!(conjunctive_transfer_certificate(&spec, 0, 1).is_err());
    }
}
