//! Isbell's desirability relation and the model view of complete games.

use std::fmt;

use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{for_each_count_vector, SimpleGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Desirability {
    StrictlyMore,
    Equivalent,
    StrictlyLess,
    Incomparable,
}

/// `i` is at least as desirable as `j`: swapping `j` for `i` never turns a
/// winning coalition into a losing one.
///
/// Only minimal winning coalitions containing `j` but not `i` need to be
/// checked; any other witness contains one of them after the swap.
pub fn at_least_as_desirable(g: &SimpleGame, i: usize, j: usize) -> bool {
    g.min_winning()
        .iter()
        .filter(|m| m.contains(j) && !m.contains(i))
        .all(|m| g.is_winning(m.without(j).with(i)))
}

pub fn compare_players(g: &SimpleGame, i: usize, j: usize) -> Result<Desirability> {
    let n = g.num_players();
    for p in [i, j] {
        if p >= n {
            return Err(Error::PlayerOutOfRange { player: p, n });
        }
    }
    if i == j {
        return Err(Error::InvalidInput("comparing a player with itself".into()));
    }
    Ok(
        match (at_least_as_desirable(g, i, j), at_least_as_desirable(g, j, i)) {
            (true, true) => Desirability::Equivalent,
            (true, false) => Desirability::StrictlyMore,
            (false, true) => Desirability::StrictlyLess,
            (false, false) => Desirability::Incomparable,
        },
    )
}

/// First incomparable pair in lexicographic order, if any.
pub fn incomparable_pair(g: &SimpleGame) -> Option<(usize, usize)> {
    let n = g.num_players();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !at_least_as_desirable(g, i, j) && !at_least_as_desirable(g, j, i))
}

pub fn is_complete(g: &SimpleGame) -> bool {
    incomparable_pair(g).is_none()
}

/// Players of a complete game split into equivalence classes, listed from
/// most to least desirable; players ascend within a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassPartition {
    /// Partition of `0..n` into consecutive blocks of the given sizes.
    pub fn contiguous(sizes: &[usize]) -> Self {
        let mut classes = Vec::with_capacity(sizes.len());
        let mut class_of = Vec::new();
        let mut next = 0;
        for (c, &s) in sizes.iter().enumerate() {
            classes.push((next..next + s).collect());
            class_of.extend(std::iter::repeat_n(c, s));
            next += s;
        }
        ClassPartition { classes, class_of }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, player: usize) -> usize {
        self.class_of[player]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn model_of(&self, x: Coalition) -> Model {
        let mut counts = vec![0; self.classes.len()];
        for p in x.members() {
            counts[self.class_of[p]] += 1;
        }
        Model(counts)
    }

    /// The coalition taking the first `counts[t]` players of each class.
    pub fn representative(&self, model: &[usize]) -> Coalition {
        self.classes
            .iter()
            .zip(model)
            .flat_map(|(class, &l)| class[..l].iter().copied())
            .collect()
    }
}

/// Computes the ordered equivalence classes of a complete game.
pub fn equivalence_classes(g: &SimpleGame) -> Result<ClassPartition> {
    if let Some((i, j)) = incomparable_pair(g) {
        return Err(Error::NotComplete { i, j });
    }
    let n = g.num_players();
    // In a complete game the number of players a player dominates is a
    // faithful rank.
    let dominated: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| at_least_as_desirable(g, i, j)).count())
        .collect();
    let mut ranks: Vec<usize> = dominated.clone();
    ranks.sort_unstable_by(|a, b| b.cmp(a));
    ranks.dedup();
    let classes: Vec<Vec<usize>> = ranks
        .iter()
        .map(|&r| (0..n).filter(|&p| dominated[p] == r).collect())
        .collect();
    let mut class_of = vec![0; n];
    for (c, class) in classes.iter().enumerate() {
        for &p in class {
            class_of[p] = c;
        }
    }
    Ok(ClassPartition { classes, class_of })
}

/// Per-class head counts `(l_1, ..., l_m)` of a coalition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Model(pub Vec<usize>);

impl Model {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Multiset notation with 1-based class labels, e.g. `{1,2^4}`.
    pub fn multiset(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(c, &l)| {
                if l == 1 {
                    format!("{}", c + 1)
                } else {
                    format!("{}^{}", c + 1, l)
                }
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// `self` is reachable from `other` by adding players and moving players
    /// to more desirable classes: every prefix sum of `self` dominates.
    pub fn shift_dominates(&self, other: &Model) -> bool {
        let mut a = 0;
        let mut b = 0;
        self.0.iter().zip(&other.0).all(|(x, y)| {
            a += x;
            b += y;
            a >= b
        })
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Winning status over the model space of a complete game.
struct ModelSpace<'a> {
    game: &'a SimpleGame,
    partition: ClassPartition,
    sizes: Vec<usize>,
}

impl<'a> ModelSpace<'a> {
    fn new(game: &'a SimpleGame) -> Result<Self> {
        let partition = equivalence_classes(game)?;
        let sizes = partition.sizes();
        Ok(ModelSpace {
            game,
            partition,
            sizes,
        })
    }

    fn wins(&self, model: &[usize]) -> bool {
        self.game.is_winning(self.partition.representative(model))
    }

    /// Models with winning status `status` accepted by `extremal`, which may
    /// perturb its scratch copy but must restore it.
    fn scan<P>(&self, status: bool, extremal: P) -> Vec<Model>
    where
        P: Fn(&Self, &mut Vec<usize>) -> bool,
    {
        let mut out = Vec::new();
        let mut counts = vec![0; self.sizes.len()];
        for_each_count_vector(&self.sizes, &mut counts, &mut |m| {
            if self.wins(m) == status {
                let mut probe = m.to_vec();
                if extremal(self, &mut probe) {
                    out.push(Model(m.to_vec()));
                }
            }
        });
        out.sort();
        out
    }
}

/// Models of losing coalitions that win after adding any player or after
/// replacing any member with a more desirable non-member.
pub fn shift_maximal_losing(g: &SimpleGame) -> Result<Vec<Model>> {
    let space = ModelSpace::new(g)?;
    Ok(space.scan(false, |s, m| {
        let k = m.len();
        for t in 0..k {
            if m[t] < s.sizes[t] {
                m[t] += 1;
                let w = s.wins(m);
                m[t] -= 1;
                if !w {
                    return false;
                }
            }
        }
        for from in 0..k {
            if m[from] == 0 {
                continue;
            }
            for to in 0..from {
                if m[to] < s.sizes[to] {
                    m[from] -= 1;
                    m[to] += 1;
                    let w = s.wins(m);
                    m[from] += 1;
                    m[to] -= 1;
                    if !w {
                        return false;
                    }
                }
            }
        }
        true
    }))
}

/// Models of winning coalitions that lose after removing any member or after
/// replacing any member with a less desirable non-member.
pub fn shift_minimal_winning(g: &SimpleGame) -> Result<Vec<Model>> {
    let space = ModelSpace::new(g)?;
    Ok(space.scan(true, |s, m| {
        let k = m.len();
        for from in 0..k {
            if m[from] == 0 {
                continue;
            }
            m[from] -= 1;
            let w = s.wins(m);
            let mut ok = !w;
            for to in from + 1..k {
                if ok && m[to] < s.sizes[to] {
                    m[to] += 1;
                    ok = !s.wins(m);
                    m[to] -= 1;
                }
            }
            m[from] += 1;
            if !ok {
                return false;
            }
        }
        true
    }))
}

/// Models of minimal winning coalitions.
pub fn minimal_winning_models(g: &SimpleGame) -> Result<Vec<Model>> {
    let space = ModelSpace::new(g)?;
    Ok(space.scan(true, |s, m| {
        (0..m.len()).all(|t| {
            if m[t] == 0 {
                return true;
            }
            m[t] -= 1;
            let w = s.wins(m);
            m[t] += 1;
            !w
        })
    }))
}

/// Models of maximal losing coalitions.
pub fn maximal_losing_models(g: &SimpleGame) -> Result<Vec<Model>> {
    let space = ModelSpace::new(g)?;
    Ok(space.scan(false, |s, m| {
        (0..m.len()).all(|t| {
            if m[t] == s.sizes[t] {
                return true;
            }
            m[t] += 1;
            let w = s.wins(m);
            m[t] -= 1;
            w
        })
    }))
}
