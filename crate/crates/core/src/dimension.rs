//! Dimension of simple games.
//!
//! A game is an intersection of `d` weighted games exactly when its maximal
//! losing coalitions split into `d` groups that can each be separated from
//! the minimal winning coalitions by one weighting. Weights are nonnegative,
//! so a part that makes a coalition lose makes all of its subsets lose too;
//! covering the maximal losing coalitions is therefore enough.
//!
//! Lower bounds come from cliques in the pairwise incompatibility graph:
//! two maximal losing coalitions that no single weighting separates must
//! sit in different parts.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::pair_incompatibility_certificate;
use crate::coalition::{Coalition, EXHAUSTIVE_PLAYERS};
use crate::error::{check_player_cap, Error, Result};
use crate::game::SimpleGame;
use crate::hierarchical::{HierarchicalSpec, Kind};
use crate::lpsep::{separable, WeightedRep};

/// Graphs larger than this get a greedy clique instead of a maximum one.
pub const EXACT_CLIQUE_LIMIT: usize = 200;

/// A game given as the intersection of weighted games.
#[derive(Clone, PartialEq, Eq)]
pub struct IntersectionRep {
    parts: Vec<WeightedRep>,
}

impl IntersectionRep {
    pub fn new(parts: Vec<WeightedRep>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidInput("intersection of no games".into()));
        };
        let n = first.num_players();
        if let Some(p) = parts.iter().find(|p| p.num_players() != n) {
            return Err(Error::InvalidInput(format!(
                "part over {} players in an intersection over {n}",
                p.num_players()
            )));
        }
        Ok(IntersectionRep { parts })
    }

    pub fn parts(&self) -> &[WeightedRep] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn num_players(&self) -> usize {
        self.parts[0].num_players()
    }

    pub fn wins(&self, x: Coalition) -> bool {
        self.parts.iter().all(|p| p.wins(x))
    }

    pub fn game(&self) -> Result<SimpleGame> {
        intersect_games(&self.parts, self.num_players())
    }
}

impl fmt::Display for IntersectionRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" AND ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntersectionRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The game winning exactly where every part wins.
pub fn intersect_games(parts: &[WeightedRep], n: usize) -> Result<SimpleGame> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("intersection of no games".into()));
    }
    if let Some(p) = parts.iter().find(|p| p.num_players() != n) {
        return Err(Error::InvalidInput(format!(
            "part over {} players, expected {n}",
            p.num_players()
        )));
    }
    if n <= EXHAUSTIVE_PLAYERS {
        return SimpleGame::from_predicate(n, |x| parts.iter().all(|p| p.wins(x)));
    }
    // Minimal winning coalitions of an intersection are minimal elements of
    // pairwise unions of the parts' minimal winning coalitions.
    let mut acc = parts[0].game()?.min_winning().to_vec();
    for p in &parts[1..] {
        let next = p.game()?;
        let mut joined = Vec::with_capacity(acc.len() * next.min_winning().len());
        for a in &acc {
            for b in next.min_winning() {
                joined.push(a.union(*b));
            }
        }
        acc = crate::game::minimize(joined);
    }
    SimpleGame::new(n, acc)
}

/// True iff `rep` defines exactly `g`. Checked on the antichains of `g`,
/// which is exact for monotone parts.
pub fn verify_intersection(g: &SimpleGame, rep: &IntersectionRep) -> bool {
    rep.num_players() == g.num_players()
        && g.min_winning().iter().all(|m| rep.wins(*m))
        && g.maximal_losing().iter().all(|y| !rep.wins(*y))
}

/// Limits for the exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest number of maximal losing coalitions the exact search accepts.
    pub max_losing: usize,
    /// Search nodes plus separation problems solved, across all targets.
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_losing: 200,
            max_steps: 1_000_000,
        }
    }
}

impl Budget {
    pub fn with_max_losing(max_losing: usize) -> Self {
        Budget {
            max_losing,
            ..Budget::default()
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_losing: usize::MAX,
            max_steps: u64::MAX,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    /// Pairwise incompatible maximal losing coalitions.
    pub witness_lower: Vec<Coalition>,
    #[serde(serialize_with = "serialize_rep")]
    pub witness_upper: IntersectionRep,
    /// Whether `witness_lower` is a maximum clique.
    pub clique_is_maximum: bool,
    pub maximal_losing: usize,
    pub budget_exceeded: bool,
    pub notes: Vec<String>,
}

fn serialize_rep<S: serde::Serializer>(rep: &IntersectionRep, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rep.parts().iter().map(|p| p.to_string()))
}

/// Part that makes every coalition win.
fn all_winning_part(n: usize) -> WeightedRep {
    WeightedRep::new(vec![BigRational::zero(); n], BigRational::zero()).expect("valid")
}

/// Part in which exactly the coalitions meeting the complement of `y` win.
fn complement_part(n: usize, y: Coalition) -> WeightedRep {
    let weights = (0..n)
        .map(|p| if y.contains(p) { BigRational::zero() } else { BigRational::one() })
        .collect();
    WeightedRep::new(weights, BigRational::one()).expect("valid")
}

/// `|L_max|` together with one part per maximal losing coalition.
pub fn upper_bound_lmax(g: &SimpleGame) -> Result<(usize, IntersectionRep)> {
    let n = g.num_players();
    let lmax = g.maximal_losing();
    if lmax.is_empty() {
        return Ok((1, IntersectionRep::new(vec![all_winning_part(n)])?));
    }
    let parts: Vec<WeightedRep> = lmax
        .par_iter()
        .map(|y| separable(n, g.min_winning(), std::slice::from_ref(y)).expect("a maximal losing coalition is separable on its own"))
        .collect();
    Ok((lmax.len(), IntersectionRep::new(parts)?))
}

/// Fixed-width bitset over vertex indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Pairwise incompatibility among the maximal losing coalitions of a game.
pub struct IncompatibilityGraph {
    vertices: Vec<Coalition>,
    adjacency: Vec<Bits>,
}

impl IncompatibilityGraph {
    /// Builds the graph, one row per worker. Every weighting found is
    /// recorded with the set of vertices it makes lose, so it settles all
    /// pairs inside that set for the other rows too.
    pub fn build(g: &SimpleGame) -> Self {
        let n = g.num_players();
        let vertices = g.maximal_losing();
        let len = vertices.len();
        let separated: Mutex<Vec<Bits>> = Mutex::new(Vec::new());
        let losing_set = |rep: &WeightedRep| {
            let (w, q) = rep.to_integer_scale();
            let mut out = Bits::new(len);
            for (v, y) in vertices.iter().enumerate() {
                let sum: BigInt = y.members().map(|p| &w[p]).sum();
                if sum < q {
                    out.insert(v);
                }
            }
            out
        };
        let rows: Vec<Vec<usize>> = (0..len)
            .into_par_iter()
            .map(|i| {
                let mut settled = Bits::new(len);
                for set in separated.lock().expect("poisoned").iter() {
                    if set.contains(i) {
                        settled.or_assign(set);
                    }
                }
                let mut incompatible = Vec::new();
                for j in i + 1..len {
                    if settled.contains(j) {
                        continue;
                    }
                    let y = vertices[j];
                    if let Ok(Some(_)) = pair_incompatibility_certificate(g, vertices[i], y) {
                        incompatible.push(j);
                        continue;
                    }
                    match separable(n, g.min_winning(), &[vertices[i], y]) {
                        Some(rep) => {
                            let set = losing_set(&rep);
                            settled.or_assign(&set);
                            separated.lock().expect("poisoned").push(set);
                        }
                        None => incompatible.push(j),
                    }
                }
                incompatible
            })
            .collect();
        let mut adjacency = vec![Bits::new(len); len];
        for (i, row) in rows.iter().enumerate() {
            for &j in row {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
        IncompatibilityGraph { vertices, adjacency }
    }

    pub fn vertices(&self) -> &[Coalition] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn incompatible(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    pub fn num_edges(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// A maximum clique when the graph has at most `EXACT_CLIQUE_LIMIT`
    /// vertices, otherwise a greedy one. The flag says which.
    pub fn clique(&self) -> (Vec<usize>, bool) {
        if self.is_empty() {
            return (Vec::new(), true);
        }
        if self.len() > EXACT_CLIQUE_LIMIT {
            return (self.greedy_clique(), false);
        }
        let mut best = self.greedy_clique();
        let mut current = Vec::new();
        self.expand(Bits::full(self.len()), &mut current, &mut best);
        best.sort_unstable();
        (best, true)
    }

    fn greedy_clique(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut clique: Vec<usize> = Vec::new();
        for v in order {
            if clique.iter().all(|&u| self.incompatible(u, v)) {
                clique.push(v);
            }
        }
        clique.sort_unstable();
        clique
    }

    /// Branch and bound with greedy colouring as the bound.
    fn expand(&self, mut candidates: Bits, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        let coloured = self.colour_order(&candidates);
        for &(v, colour) in coloured.iter().rev() {
            if current.len() + colour <= best.len() {
                return;
            }
            current.push(v);
            let next = candidates.and(&self.adjacency[v]);
            if next.is_empty() {
                if current.len() > best.len() {
                    best.clone_from(current);
                }
            } else {
                self.expand(next, current, best);
            }
            current.pop();
            candidates.remove(v);
        }
    }

    /// Vertices with colours from a greedy colouring, colours ascending.
    fn colour_order(&self, candidates: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(candidates.count());
        let mut uncoloured = candidates.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut open = uncoloured.clone();
            while let Some(v) = open.first() {
                open.remove(v);
                uncoloured.remove(v);
                open.and_not_assign(&self.adjacency[v]);
                out.push((v, colour));
            }
        }
        out
    }
}

/// True iff no single weighting separates any two of `set` from the
/// minimal winning coalitions of `g`, and every member loses.
pub fn pairwise_incompatible(g: &SimpleGame, set: &[Coalition]) -> bool {
    if set.iter().any(|y| g.is_winning(*y)) {
        return false;
    }
    let n = g.num_players();
    let pairs: Vec<(usize, usize)> = (0..set.len())
        .flat_map(|i| (i + 1..set.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .all(|&(i, j)| separable(n, g.min_winning(), &[set[i], set[j]]).is_none())
}

/// Size of a maximum set of pairwise incompatible maximal losing
/// coalitions, with the set itself. A game without incompatible pairs gets
/// bound one.
pub fn kurz_napel_lower(g: &SimpleGame) -> (usize, Vec<Coalition>) {
    let (size, witness, _) = clique_bound(&IncompatibilityGraph::build(g));
    (size, witness)
}

fn clique_bound(graph: &IncompatibilityGraph) -> (usize, Vec<Coalition>, bool) {
    let (clique, maximum) = graph.clique();
    let witness: Vec<Coalition> = clique.iter().map(|&v| graph.vertices[v]).collect();
    (witness.len().max(1), witness, maximum)
}

/// Separation problems on groups of maximal losing coalitions, memoized.
struct Separator<'a> {
    game: &'a SimpleGame,
    graph: &'a IncompatibilityGraph,
    memo: HashMap<Bits, Option<WeightedRep>>,
    steps: u64,
    max_steps: u64,
}

struct OutOfBudget;

impl<'a> Separator<'a> {
    fn new(game: &'a SimpleGame, graph: &'a IncompatibilityGraph, max_steps: u64) -> Self {
        Separator {
            game,
            graph,
            memo: HashMap::new(),
            steps: 0,
            max_steps,
        }
    }

    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.steps += 1;
        if self.steps > self.max_steps {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn solve(&mut self, group: &Bits) -> std::result::Result<Option<WeightedRep>, OutOfBudget> {
        if let Some(hit) = self.memo.get(group) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let lose: Vec<Coalition> = group.iter().map(|v| self.graph.vertices[v]).collect();
        let rep = separable(self.game.num_players(), self.game.min_winning(), &lose);
        self.memo.insert(group.clone(), rep.clone());
        Ok(rep)
    }

    /// Rep for `group + v` if one exists, trying the current rep first.
    fn extend(
        &mut self,
        group: &Bits,
        rep: &WeightedRep,
        v: usize,
    ) -> std::result::Result<Option<WeightedRep>, OutOfBudget> {
        if group.intersects(&self.graph.adjacency[v]) {
            return Ok(None);
        }
        if !rep.wins(self.graph.vertices[v]) {
            return Ok(Some(rep.clone()));
        }
        let mut bigger = group.clone();
        bigger.insert(v);
        self.solve(&bigger)
    }

    fn singleton(&self, v: usize) -> WeightedRep {
        complement_part(self.game.num_players(), self.graph.vertices[v])
    }
}

/// Greedy cover: grow one group at a time until no further coalition joins.
fn greedy_cover(sep: &mut Separator<'_>) -> std::result::Result<Vec<WeightedRep>, OutOfBudget> {
    let len = sep.graph.len();
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(sep.graph.degree(v)));
    let mut uncovered = Bits::full(len);
    let mut parts = Vec::new();
    while let Some(&seed) = order.iter().find(|&&v| uncovered.contains(v)) {
        let mut group = Bits::new(len);
        group.insert(seed);
        let mut rep = sep.singleton(seed);
        for &v in &order {
            if !uncovered.contains(v) || group.contains(v) {
                continue;
            }
            if let Some(r) = sep.extend(&group, &rep, v)? {
                rep = r;
                group.insert(v);
            }
        }
        for v in 0..len {
            if !rep.wins(sep.graph.vertices[v]) {
                uncovered.remove(v);
            }
        }
        parts.push(rep);
    }
    Ok(parts)
}

/// Tries to split every vertex into at most `target` separable groups.
struct Partition<'s, 'a> {
    sep: &'s mut Separator<'a>,
    order: Vec<usize>,
    target: usize,
    groups: Vec<(Bits, WeightedRep)>,
}

impl Partition<'_, '_> {
    fn search(&mut self, at: usize) -> std::result::Result<bool, OutOfBudget> {
        if at == self.order.len() {
            return Ok(true);
        }
        self.sep.tick()?;
        let v = self.order[at];
        for gi in 0..self.groups.len() {
            let (group, rep) = &self.groups[gi];
            let (group, rep) = (group.clone(), rep.clone());
            if let Some(next) = self.sep.extend(&group, &rep, v)? {
                let saved = std::mem::replace(&mut self.groups[gi].1, next);
                self.groups[gi].0.insert(v);
                if self.search(at + 1)? {
                    return Ok(true);
                }
                self.groups[gi].0.remove(v);
                self.groups[gi].1 = saved;
            }
        }
        if self.groups.len() < self.target {
            let mut group = Bits::new(self.sep.graph.len());
            group.insert(v);
            self.groups.push((group, self.sep.singleton(v)));
            if self.search(at + 1)? {
                return Ok(true);
            }
            self.groups.pop();
        }
        Ok(false)
    }
}

/// Exact dimension by searching partitions of the maximal losing
/// coalitions, seeded with the clique bound below and a greedy cover above.
///
/// When the game has more maximal losing coalitions than the budget allows,
/// or the search runs out of steps, the report carries bounds only.
pub fn exact_dimension(g: &SimpleGame, budget: Budget) -> DimensionReport {
    dimension_report(g, budget, true)
}

/// Bounds without the exact search.
pub fn dimension_bounds(g: &SimpleGame) -> DimensionReport {
    dimension_report(g, Budget::unlimited(), false)
}

fn dimension_report(g: &SimpleGame, budget: Budget, exact: bool) -> DimensionReport {
    let n = g.num_players();
    let graph = IncompatibilityGraph::build(g);
    if graph.is_empty() {
        let rep = IntersectionRep::new(vec![all_winning_part(n)]).expect("one part");
        return DimensionReport {
            lower: 1,
            upper: 1,
            exact: Some(1),
            witness_lower: Vec::new(),
            witness_upper: rep,
            clique_is_maximum: true,
            maximal_losing: 0,
            budget_exceeded: false,
            notes: vec!["every coalition wins".into()],
        };
    }
    let (lower, witness_lower, clique_is_maximum) = clique_bound(&graph);
    let mut notes = Vec::new();
    if !clique_is_maximum {
        notes.push(format!(
            "{} maximal losing coalitions: greedy clique, may not be maximum",
            graph.len()
        ));
    }
    let mut sep = Separator::new(g, &graph, budget.max_steps);
    let fallback = || -> Vec<WeightedRep> {
        graph.vertices.iter().map(|y| complement_part(n, *y)).collect()
    };
    let (mut parts, mut out_of_steps) = match greedy_cover(&mut sep) {
        Ok(parts) => (parts, false),
        Err(OutOfBudget) => (fallback(), true),
    };
    let mut too_large = false;
    let mut exact_value = None;
    if parts.len() == lower {
        exact_value = Some(lower);
    } else if exact && !out_of_steps {
        if graph.len() > budget.max_losing {
            too_large = true;
            notes.push(format!(
                "{} maximal losing coalitions exceed the exact-search limit {}",
                graph.len(),
                budget.max_losing
            ));
        } else {
            match search_partitions(&mut sep, &witness_lower, lower, parts.len()) {
                Ok(Some(found)) => {
                    exact_value = Some(found.len());
                    parts = found;
                }
                Ok(None) => exact_value = Some(parts.len()),
                Err(OutOfBudget) => out_of_steps = true,
            }
        }
    }
    let budget_exceeded = out_of_steps || too_large;
    if out_of_steps {
        notes.push(format!("search stopped after {} steps", sep.steps.min(budget.max_steps)));
    }
    let upper = parts.len();
    DimensionReport {
        lower,
        upper,
        exact: exact_value,
        witness_lower,
        witness_upper: IntersectionRep::new(parts).expect("nonempty cover"),
        clique_is_maximum,
        maximal_losing: graph.len(),
        budget_exceeded,
        notes,
    }
}

/// Smallest partition with fewer than `upper` groups, if any.
fn search_partitions(
    sep: &mut Separator<'_>,
    clique: &[Coalition],
    lower: usize,
    upper: usize,
) -> std::result::Result<Option<Vec<WeightedRep>>, OutOfBudget> {
    let graph = sep.graph;
    let clique_idx: Vec<usize> = clique
        .iter()
        .map(|y| graph.vertices.iter().position(|v| v == y).expect("clique vertex"))
        .collect();
    let mut rest: Vec<usize> = (0..graph.len()).filter(|v| !clique_idx.contains(v)).collect();
    rest.sort_by_key(|&v| std::cmp::Reverse(graph.degree(v)));
    for target in lower..upper {
        // Clique members necessarily land in distinct groups.
        let groups: Vec<(Bits, WeightedRep)> = clique_idx
            .iter()
            .map(|&v| {
                let mut b = Bits::new(graph.len());
                b.insert(v);
                (b, sep.singleton(v))
            })
            .collect();
        let mut p = Partition {
            sep,
            order: rest.clone(),
            target,
            groups,
        };
        if p.search(0)? {
            return Ok(Some(p.groups.into_iter().map(|(_, r)| r).collect()));
        }
    }
    Ok(None)
}

/// Codimension: the least number of weighted games whose union is `g`,
/// computed as the dimension of the dual.
pub fn codimension(g: &SimpleGame, budget: Budget) -> DimensionReport {
    exact_dimension(&g.dual(), budget)
}

/// Codimension bounds without the exact search.
pub fn codimension_bounds(g: &SimpleGame) -> DimensionReport {
    dimension_bounds(&g.dual())
}

/// One part per class prefix: weight one on the first `s` classes and
/// quota `k_s`.
pub fn conjunctive_intersection_rep(spec: &HierarchicalSpec) -> Result<IntersectionRep> {
    if spec.kind() != Kind::Conjunctive {
        return Err(Error::Precondition("needs a conjunctive spec".into()));
    }
    let n = spec.num_players();
    check_player_cap(n, crate::coalition::MAX_PLAYERS)?;
    let mut parts = Vec::with_capacity(spec.num_classes());
    let mut upto = 0;
    for (s, &size) in spec.sizes().iter().enumerate() {
        upto += size;
        let w: Vec<i64> = (0..n).map(|p| i64::from(p < upto)).collect();
        parts.push(WeightedRep::from_integers(&w, spec.thresholds()[s] as i64)?);
    }
    IntersectionRep::new(parts)
}
