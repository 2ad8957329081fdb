//! Simple games given by their minimal winning coalitions.

use std::fmt;

use crate::coalition::{Coalition, EXHAUSTIVE_PLAYERS};
use crate::error::{check_player_cap, check_players, Error, Result};

/// A monotone simple game on players `0..n`.
///
/// The game is stored as the antichain of its minimal winning coalitions in
/// canonical order; everything else is derived from it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGame {
    n: usize,
    min_winning: Vec<Coalition>,
}

impl SimpleGame {
    /// Builds a game from any generating family of winning coalitions.
    ///
    /// The family is reduced to its subset-minimal elements, so redundant
    /// supersets are accepted and dropped.
    pub fn new<I>(n: usize, winning: I) -> Result<Self>
    where
        I: IntoIterator<Item = Coalition>,
    {
        check_players(n)?;
        let mut all = Vec::new();
        for c in winning {
            if !c.fits(n) {
                return Err(Error::PlayerOutOfRange {
                    player: c.span() - 1,
                    n,
                });
            }
            all.push(c);
        }
        Ok(SimpleGame {
            n,
            min_winning: minimize(all),
        })
    }

    /// Game from a monotone predicate, by scanning every coalition.
    ///
    /// Limited to [`EXHAUSTIVE_PLAYERS`] players.
    pub fn from_predicate<F>(n: usize, winning: F) -> Result<Self>
    where
        F: Fn(Coalition) -> bool,
    {
        check_player_cap(n, EXHAUSTIVE_PLAYERS)?;
        let size = 1usize << n;
        let table: Vec<bool> = (0..size as u64)
            .map(|x| winning(Coalition::from_bits(x)))
            .collect();
        let mut min_winning = Vec::new();
        for x in 0..size {
            if table[x] && (0..n).all(|i| x >> i & 1 == 0 || !table[x ^ 1 << i]) {
                min_winning.push(Coalition::from_bits(x as u64));
            }
        }
        min_winning.sort();
        Ok(SimpleGame { n, min_winning })
    }

    /// Game on players grouped into consecutive classes of the given sizes,
    /// whose status depends only on how many players of each class are
    /// present. `winning` must be monotone in every count.
    pub fn from_counting_predicate<F>(sizes: &[usize], winning: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> bool,
    {
        let n: usize = sizes.iter().sum();
        check_players(n)?;
        let mut starts = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in sizes {
            starts.push(acc);
            acc += s;
        }
        let mut min_winning = Vec::new();
        let mut counts = vec![0usize; sizes.len()];
        for_each_count_vector(sizes, &mut counts, &mut |model| {
            if !winning(model) {
                return;
            }
            let mut probe = model.to_vec();
            for t in 0..model.len() {
                if model[t] > 0 {
                    probe[t] -= 1;
                    let still = winning(&probe);
                    probe[t] += 1;
                    if still {
                        return;
                    }
                }
            }
            // Minimal model: every coalition realising it is minimal winning.
            let mut partial = vec![Coalition::EMPTY];
            for (t, &l) in model.iter().enumerate() {
                let pool = Coalition::range(starts[t], starts[t] + sizes[t]);
                let choices = crate::coalition::k_subsets(pool, l);
                partial = partial
                    .iter()
                    .flat_map(|p| choices.iter().map(move |c| p.union(*c)))
                    .collect();
            }
            min_winning.extend(partial);
        });
        min_winning.sort();
        Ok(SimpleGame { n, min_winning })
    }

    pub fn num_players(&self) -> usize {
        self.n
    }

    pub fn min_winning(&self) -> &[Coalition] {
        &self.min_winning
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn is_winning(&self, x: Coalition) -> bool {
        self.min_winning.iter().any(|m| m.is_subset(x))
    }

    /// Every coalition wins (the empty coalition is winning).
    pub fn is_all_winning(&self) -> bool {
        self.min_winning.first() == Some(&Coalition::EMPTY)
    }

    /// No coalition wins.
    pub fn is_all_losing(&self) -> bool {
        self.min_winning.is_empty()
    }

    /// Maximal losing coalitions, in canonical order.
    ///
    /// A losing coalition is maximal exactly when its complement is a minimal
    /// transversal of the minimal winning coalitions.
    pub fn maximal_losing(&self) -> Vec<Coalition> {
        let mut out: Vec<Coalition> = minimal_transversals(&self.min_winning)
            .into_iter()
            .map(|t| t.complement(self.n))
            .collect();
        out.sort();
        out
    }

    /// The dual game, whose winning coalitions are the complements of the
    /// losing coalitions of `self`.
    pub fn dual(&self) -> SimpleGame {
        let mut min_winning = minimal_transversals(&self.min_winning);
        min_winning.sort();
        SimpleGame {
            n: self.n,
            min_winning,
        }
    }

    /// Players belonging to every winning coalition. Empty for the all-losing
    /// game.
    pub fn veto_players(&self) -> Coalition {
        if self.min_winning.is_empty() {
            return Coalition::EMPTY;
        }
        self.min_winning
            .iter()
            .fold(self.grand_coalition(), |acc, m| acc.intersection(*m))
    }

    /// Players that belong to no minimal winning coalition.
    pub fn dummy_players(&self) -> Coalition {
        let used = self
            .min_winning
            .iter()
            .fold(Coalition::EMPTY, |acc, m| acc.union(*m));
        used.complement(self.n)
    }

    /// Winning status of every coalition, indexed by mask.
    pub fn winning_table(&self) -> Result<Vec<bool>> {
        check_player_cap(self.n, EXHAUSTIVE_PLAYERS)?;
        let size = 1usize << self.n;
        let mut table = vec![false; size];
        for m in &self.min_winning {
            table[m.bits() as usize] = true;
        }
        for i in 0..self.n {
            let bit = 1usize << i;
            for x in 0..size {
                if x & bit != 0 && table[x ^ bit] {
                    table[x] = true;
                }
            }
        }
        Ok(table)
    }

    pub fn count_winning(&self) -> Result<usize> {
        Ok(self.winning_table()?.into_iter().filter(|&w| w).count())
    }

    /// Same game with players renumbered: player `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SimpleGame> {
        if perm.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "permutation of length {} for {} players",
                perm.len(),
                self.n
            )));
        }
        let mapped = self
            .min_winning
            .iter()
            .map(|m| m.members().map(|p| perm[p]).collect::<Coalition>());
        SimpleGame::new(self.n, mapped)
    }
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGame(n={}, W_min={:?})", self.n, self.min_winning)
    }
}

/// Subset-minimal elements of `family`, sorted canonically.
pub fn minimize(mut family: Vec<Coalition>) -> Vec<Coalition> {
    family.sort();
    family.dedup();
    let mut kept: Vec<Coalition> = Vec::with_capacity(family.len());
    for c in family {
        // Sorted by size, so only earlier elements can be subsets of `c`.
        if !kept.iter().any(|k| k.is_subset(c)) {
            kept.push(c);
        }
    }
    kept
}

/// Minimal hitting sets of `edges` (Berge's algorithm).
///
/// No edges: the only transversal is the empty set. An empty edge cannot be
/// hit, so there are no transversals at all.
pub fn minimal_transversals(edges: &[Coalition]) -> Vec<Coalition> {
    if edges.iter().any(|e| e.is_empty()) {
        return Vec::new();
    }
    let mut sorted = edges.to_vec();
    sorted.sort();
    let mut transversals = vec![Coalition::EMPTY];
    for e in sorted {
        let mut next = Vec::with_capacity(transversals.len());
        let mut extended = Vec::new();
        for t in &transversals {
            if t.intersects(e) {
                next.push(*t);
            } else {
                extended.extend(e.members().map(|v| t.with(v)));
            }
        }
        // Kept transversals are already pairwise incomparable; only the
        // extensions need filtering.
        extended.sort();
        extended.dedup();
        let mut fresh: Vec<Coalition> = Vec::new();
        for c in extended {
            if !next.iter().any(|k| k.is_subset(c)) && !fresh.iter().any(|k| k.is_subset(c)) {
                fresh.push(c);
            }
        }
        next.extend(fresh);
        transversals = next;
    }
    transversals
}

/// Calls `f` on every count vector `0 <= c[t] <= sizes[t]`, odometer order
/// with the last class varying fastest.
pub(crate) fn for_each_count_vector<F: FnMut(&[usize])>(
    sizes: &[usize],
    counts: &mut [usize],
    f: &mut F,
) {
    counts.iter_mut().for_each(|c| *c = 0);
    loop {
        f(counts);
        let mut t = sizes.len();
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            if counts[t] < sizes[t] {
                counts[t] += 1;
                break;
            }
            counts[t] = 0;
        }
    }
}
