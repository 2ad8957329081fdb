//! Disjunctive and conjunctive hierarchical games.
//!
//! Players are split into consecutive classes `P_1, ..., P_m` (class 1 gets
//! the lowest indices). A disjunctive game needs *some* cumulative threshold
//! `|X ∩ (P_1 ∪ ... ∪ P_i)| >= k_i` to be met, a conjunctive game needs *all*
//! of them.

use std::fmt;

use serde::Serialize;

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::desirability::{equivalence_classes, Model};
use crate::error::{Error, Result};
use crate::game::SimpleGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Disjunctive,
    Conjunctive,
}

impl Kind {
    pub fn short_name(self) -> &'static str {
        match self {
            Kind::Disjunctive => "disj",
            Kind::Conjunctive => "conj",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "disj" | "disjunctive" | "exists" => Some(Kind::Disjunctive),
            "conj" | "conjunctive" | "forall" => Some(Kind::Conjunctive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HierarchicalSpec {
    kind: Kind,
    sizes: Vec<usize>,
    thresholds: Vec<usize>,
}

impl HierarchicalSpec {
    /// Checks the threshold sequence: strictly increasing for disjunctive
    /// games, strictly increasing up to a possibly repeated last value for
    /// conjunctive games.
    pub fn new(kind: Kind, sizes: Vec<usize>, thresholds: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.len() != thresholds.len() {
            return Err(Error::InvalidInput(format!(
                "need matching nonempty size and threshold vectors, got {} and {}",
                sizes.len(),
                thresholds.len()
            )));
        }
        if sizes.contains(&0) || thresholds.contains(&0) {
            return Err(Error::InvalidInput(
                "class sizes and thresholds must be positive".into(),
            ));
        }
        let total: usize = sizes.iter().sum();
        if total > MAX_PLAYERS {
            return Err(Error::TooManyPlayers {
                n: total,
                cap: MAX_PLAYERS,
            });
        }
        let m = thresholds.len();
        for i in 1..m {
            let (prev, cur) = (thresholds[i - 1], thresholds[i]);
            let ok = match kind {
                Kind::Disjunctive => prev < cur,
                Kind::Conjunctive => prev < cur || (i == m - 1 && prev == cur),
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "thresholds {thresholds:?} are not admissible for a {} game",
                    kind.short_name()
                )));
            }
        }
        Ok(HierarchicalSpec {
            kind,
            sizes,
            thresholds,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn num_players(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Players of class `c` (0-based).
    pub fn class(&self, c: usize) -> Coalition {
        let start: usize = self.sizes[..c].iter().sum();
        Coalition::range(start, start + self.sizes[c])
    }

    pub fn wins_model(&self, counts: &[usize]) -> bool {
        let mut acc = 0;
        let mut met = counts.iter().zip(&self.thresholds).map(|(l, k)| {
            acc += l;
            acc >= *k
        });
        match self.kind {
            Kind::Disjunctive => met.any(|b| b),
            Kind::Conjunctive => met.all(|b| b),
        }
    }

    pub fn model_of(&self, x: Coalition) -> Vec<usize> {
        (0..self.num_classes())
            .map(|c| x.intersection(self.class(c)).len())
            .collect()
    }

    pub fn wins(&self, x: Coalition) -> bool {
        self.wins_model(&self.model_of(x))
    }

    /// The coalition taking the first `counts[c]` players of every class.
    pub fn representative(&self, counts: &[usize]) -> Coalition {
        let mut start = 0;
        let mut out = Coalition::EMPTY;
        for (c, &l) in counts.iter().enumerate() {
            out = out.union(Coalition::range(start, start + l));
            start += self.sizes[c];
        }
        out
    }

    fn require_conjunctive(&self, what: &str) -> Result<()> {
        if self.kind != Kind::Conjunctive {
            return Err(Error::Precondition(format!("{what} needs a conjunctive game")));
        }
        Ok(())
    }
}

impl fmt::Display for HierarchicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{} n={} k={}",
            self.kind.short_name(),
            join(&self.sizes),
            join(&self.thresholds)
        )
    }
}

pub fn build(spec: &HierarchicalSpec) -> Result<SimpleGame> {
    SimpleGame::from_counting_predicate(&spec.sizes, |c| spec.wins_model(c))
}

/// A violated partiteness condition (classes numbered from 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PartitenessViolation {
    /// `k_1 > n_1`.
    FirstThreshold { k1: usize, n1: usize },
    /// `k_i >= k_{i-1} + n_i`.
    Step {
        class: usize,
        k: usize,
        k_prev: usize,
        n: usize,
    },
    /// Desirability classes of the built game differ from the declared ones.
    ClassMismatch { declared: usize, actual: usize },
}

impl fmt::Display for PartitenessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitenessViolation::FirstThreshold { k1, n1 } => write!(f, "k_1={k1} > n_1={n1}"),
            PartitenessViolation::Step {
                class,
                k,
                k_prev,
                n,
            } => write!(
                f,
                "k_{class}={k} >= k_{}+n_{class}={}",
                class - 1,
                k_prev + n
            ),
            PartitenessViolation::ClassMismatch { declared, actual } => write!(
                f,
                "declared {declared} classes but desirability gives {actual}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partiteness {
    pub true_m_partite: bool,
    pub violations: Vec<PartitenessViolation>,
}

/// Whether the declared classes are exactly the desirability classes.
///
/// Conjunctive specs use the closed-form conditions `k_1 <= n_1` and
/// `k_i < k_{i-1} + n_i`. Disjunctive specs are checked on the built game.
pub fn validate_partiteness(spec: &HierarchicalSpec) -> Result<Partiteness> {
    let mut violations = Vec::new();
    match spec.kind {
        Kind::Conjunctive => {
            let (n, k) = (&spec.sizes, &spec.thresholds);
            if k[0] > n[0] {
                violations.push(PartitenessViolation::FirstThreshold { k1: k[0], n1: n[0] });
            }
            for i in 1..k.len() {
                if k[i] >= k[i - 1] + n[i] {
                    violations.push(PartitenessViolation::Step {
                        class: i + 1,
                        k: k[i],
                        k_prev: k[i - 1],
                        n: n[i],
                    });
                }
            }
        }
        Kind::Disjunctive => {
            let g = build(spec)?;
            let classes = equivalence_classes(&g)?;
            let declared: Vec<Vec<usize>> = (0..spec.num_classes())
                .map(|c| spec.class(c).members().collect())
                .collect();
            if classes.classes() != declared.as_slice() {
                violations.push(PartitenessViolation::ClassMismatch {
                    declared: spec.num_classes(),
                    actual: classes.num_classes(),
                });
            }
        }
    }
    Ok(Partiteness {
        true_m_partite: violations.is_empty(),
        violations,
    })
}

fn require_partite(spec: &HierarchicalSpec) -> Result<()> {
    spec.require_conjunctive("this operation")?;
    let p = validate_partiteness(spec)?;
    if !p.true_m_partite {
        let list: Vec<String> = p.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Precondition(format!(
            "spec is not truly {}-partite: {}",
            spec.num_classes(),
            list.join("; ")
        )));
    }
    Ok(())
}

/// `P_1` when `k_1 = n_1`, otherwise empty.
pub fn veto_players(spec: &HierarchicalSpec) -> Result<Coalition> {
    require_partite(spec)?;
    Ok(if spec.thresholds[0] == spec.sizes[0] {
        spec.class(0)
    } else {
        Coalition::EMPTY
    })
}

/// `P_m` when `k_{m-1} = k_m`, otherwise empty.
pub fn dummy_players(spec: &HierarchicalSpec) -> Result<Coalition> {
    require_partite(spec)?;
    let m = spec.num_classes();
    Ok(if m >= 2 && spec.thresholds[m - 2] == spec.thresholds[m - 1] {
        spec.class(m - 1)
    } else {
        Coalition::EMPTY
    })
}

/// Drops a veto class `P_1` and a dummy class `P_m`:
/// `n' = (n_2..n_{m-1})`, `k' = (k_2-k_1, .., k_{m-1}-k_1)`.
///
/// The reduced game is the original with every veto player present and the
/// dummies deleted.
pub fn reduce(spec: &HierarchicalSpec) -> Result<HierarchicalSpec> {
    spec.require_conjunctive("reduction")?;
    let m = spec.num_classes();
    let (n, k) = (&spec.sizes, &spec.thresholds);
    if m < 3 {
        return Err(Error::Precondition(
            "reduction needs a veto class, a dummy class and something in between".into(),
        ));
    }
    if k[0] != n[0] {
        return Err(Error::Precondition("first class is not a veto class (k_1 != n_1)".into()));
    }
    if k[m - 2] != k[m - 1] {
        return Err(Error::Precondition("last class is not a dummy class (k_{m-1} != k_m)".into()));
    }
    HierarchicalSpec::new(
        Kind::Conjunctive,
        n[1..m - 1].to_vec(),
        k[1..m - 1].iter().map(|t| t - k[0]).collect(),
    )
}

/// Shift-maximal losing models of a truly `m`-partite conjunctive game in
/// closed form.
///
/// Model `M_i` fills classes `1..=i` greedily with `k_i - 1` players and
/// takes every player of the later classes. `M_m` is absent when `P_m` is a
/// dummy class.
pub fn shiftmax_models_closed_form(spec: &HierarchicalSpec) -> Result<Vec<Model>> {
    require_partite(spec)?;
    let m = spec.num_classes();
    let (n, k) = (&spec.sizes, &spec.thresholds);
    let has_dummies = m >= 2 && k[m - 2] == k[m - 1];
    let mut out = Vec::new();
    for i in 0..m {
        if i == m - 1 && has_dummies {
            continue;
        }
        let mut remaining = k[i] - 1;
        let mut counts = vec![0; m];
        for t in 0..=i {
            let take = remaining.min(n[t]);
            counts[t] = take;
            remaining -= take;
        }
        if remaining > 0 || counts[i] >= n[i] {
            continue;
        }
        counts[i + 1..].copy_from_slice(&n[i + 1..]);
        out.push(Model(counts));
    }
    out.sort();
    Ok(out)
}

/// Game with `|P_0| = k`, `|P_1| = .. = |P_{m-1}| = 2k` and thresholds
/// `(2, 4, .., 2m)`, disjunctive.
pub fn os3_spec(k: usize, m: usize) -> Result<HierarchicalSpec> {
    if k < 2 || m < 2 {
        return Err(Error::InvalidInput(format!("need k >= 2 and m >= 2, got k={k} m={m}")));
    }
    let mut sizes = vec![k];
    sizes.extend(std::iter::repeat_n(2 * k, m - 1));
    HierarchicalSpec::new(Kind::Disjunctive, sizes, (1..=m).map(|i| 2 * i).collect())
}

/// `H_∃((d, 2d), (2, 4))`.
pub fn prop5_spec(d: usize) -> Result<HierarchicalSpec> {
    os3_spec(d, 2)
}

/// Index tuple `(i_0, .., i_{m-2})` of a witness coalition, with the last
/// class index derived as their sum mod `k`.
pub fn os3_witness(spec: &HierarchicalSpec, k: usize, index: &[usize]) -> Coalition {
    let m = spec.num_classes();
    debug_assert_eq!(index.len(), m - 1);
    let last = index.iter().sum::<usize>() % k;
    let mut y = Coalition::singleton(index[0]);
    for c in 1..m {
        let j = if c == m - 1 { last } else { index[c] };
        y = y.union(os3_pair(spec, c, j));
    }
    y
}

/// `{p^{(2j)}_c, p^{(2j+1)}_c}`.
pub fn os3_pair(spec: &HierarchicalSpec, class: usize, j: usize) -> Coalition {
    let start = spec.class(class).members().next().expect("nonempty class");
    Coalition::from_members([start + 2 * j, start + 2 * j + 1])
}

/// All `k^{m-1}` index tuples in lexicographic order.
pub fn os3_indices(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m - 1 {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// The game of [`os3_spec`] and its witness set of `k^{m-1}` losing
/// coalitions, pairwise incompatible.
pub fn os3_witness_set(k: usize, m: usize) -> Result<(SimpleGame, Vec<Coalition>)> {
    let spec = os3_spec(k, m)?;
    let g = build(&spec)?;
    let s = os3_indices(k, m)
        .iter()
        .map(|idx| os3_witness(&spec, k, idx))
        .collect();
    Ok((g, s))
}

/// Tripartite game `(|C_1| >= k_1) ∨ [(|C_1|+|C_2| >= k_2) ∧ (|C| >= k_3)]`.
pub fn build_delta1(sizes: [usize; 3], thresholds: [usize; 3]) -> Result<SimpleGame> {
    check_delta1(sizes, thresholds)?;
    let [k1, k2, k3] = thresholds;
    SimpleGame::from_counting_predicate(&sizes, |c| {
        c[0] >= k1 || (c[0] + c[1] >= k2 && c[0] + c[1] + c[2] >= k3)
    })
}

pub(crate) fn check_delta1(sizes: [usize; 3], thresholds: [usize; 3]) -> Result<()> {
    let [n1, n2, n3] = sizes;
    let [k1, k2, k3] = thresholds;
    let ok = k1 >= 1
        && k2 >= 1
        && k1 < k3
        && k2 < k3
        && n1 >= k1
        && n2 + k1 > k2
        && n3 + k2 > k3;
    if !ok {
        return Err(Error::InvalidInput(format!(
            "delta1 parameters n={sizes:?} k={thresholds:?} violate k1<k3, k2<k3, n1>=k1, n2>k2-k1, n3>k3-k2"
        )));
    }
    let total = n1 + n2 + n3;
    if total > MAX_PLAYERS {
        return Err(Error::TooManyPlayers {
            n: total,
            cap: MAX_PLAYERS,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desirability::{minimal_winning_models, shift_maximal_losing};

    fn conj(n: &[usize], k: &[usize]) -> HierarchicalSpec {
        HierarchicalSpec::new(Kind::Conjunctive, n.to_vec(), k.to_vec()).unwrap()
    }

    fn disj(n: &[usize], k: &[usize]) -> HierarchicalSpec {
        HierarchicalSpec::new(Kind::Disjunctive, n.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn threshold_sequences() {
        assert!(HierarchicalSpec::new(Kind::Disjunctive, vec![2, 2], vec![3, 3]).is_err());
        assert!(HierarchicalSpec::new(Kind::Conjunctive, vec![2, 2], vec![3, 3]).is_ok());
        assert!(HierarchicalSpec::new(Kind::Conjunctive, vec![2, 2, 2], vec![3, 3, 4]).is_err());
        assert!(HierarchicalSpec::new(Kind::Conjunctive, vec![2, 0], vec![1, 2]).is_err());
        assert!(HierarchicalSpec::new(Kind::Conjunctive, vec![2], vec![1, 2]).is_err());
    }

    #[test]
    fn disjunctive_2_5_minimal_models() {
        let g = build(&disj(&[2, 5], &[2, 5])).unwrap();
        let models = minimal_winning_models(&g).unwrap();
        assert_eq!(
            models,
            vec![Model(vec![0, 5]), Model(vec![1, 4]), Model(vec![2, 0])]
        );
    }

    #[test]
    fn dictator() {
        let g = build(&disj(&[1], &[1])).unwrap();
        assert_eq!(g.min_winning(), &[Coalition::singleton(0)]);
    }

    #[test]
    fn partiteness_conditions() {
        assert!(validate_partiteness(&conj(&[4, 4, 4], &[2, 4, 7])).unwrap().true_m_partite);
        let p = validate_partiteness(&conj(&[2, 1], &[2, 3])).unwrap();
        assert_eq!(
            p.violations,
            vec![PartitenessViolation::Step { class: 2, k: 3, k_prev: 2, n: 1 }]
        );
        let p = validate_partiteness(&conj(&[3, 2], &[4, 5])).unwrap();
        assert_eq!(p.violations, vec![PartitenessViolation::FirstThreshold { k1: 4, n1: 3 }]);
        assert!(!p.true_m_partite);
    }

    #[test]
    fn disjunctive_partiteness_is_empirical() {
        assert!(validate_partiteness(&disj(&[2, 5], &[2, 5])).unwrap().true_m_partite);
        // The first threshold is out of reach, so only the head count matters.
        let p = validate_partiteness(&disj(&[1, 2], &[2, 3])).unwrap();
        assert!(!p.true_m_partite);
    }

    #[test]
    fn veto_and_dummy_classes() {
        let s = conj(&[4, 4, 4], &[2, 4, 7]);
        assert!(veto_players(&s).unwrap().is_empty());
        assert!(dummy_players(&s).unwrap().is_empty());

        let s = conj(&[2, 3], &[2, 4]);
        assert_eq!(veto_players(&s).unwrap(), Coalition::range(0, 2));
        assert_eq!(build(&s).unwrap().veto_players(), Coalition::range(0, 2));

        let s = conj(&[3, 3, 4], &[2, 4, 4]);
        assert_eq!(dummy_players(&s).unwrap(), Coalition::range(6, 10));
        assert_eq!(build(&s).unwrap().dummy_players(), Coalition::range(6, 10));

        // k_2 = k_1 + n_2 merges the first two classes; the last class is
        // still dummy in the game, but the closed form does not apply.
        let s = conj(&[3, 2, 4], &[2, 4, 4]);
        assert!(matches!(dummy_players(&s), Err(Error::Precondition(_))));
        assert_eq!(build(&s).unwrap().dummy_players(), Coalition::range(5, 9));
        assert!(veto_players(&disj(&[2, 5], &[2, 5])).is_err());
    }

    #[test]
    fn reduction_formula() {
        let s = conj(&[2, 3, 4, 2], &[2, 3, 5, 5]);
        let r = reduce(&s).unwrap();
        assert_eq!(r.sizes(), &[3, 4]);
        assert_eq!(r.thresholds(), &[1, 3]);
        assert!(veto_players(&r).unwrap().is_empty());
        assert!(dummy_players(&r).unwrap().is_empty());

        // Reduced game = original with vetoes present, dummies deleted.
        let original = build(&s).unwrap();
        let reduced = build(&r).unwrap();
        let veto = s.class(0);
        for x in 0..1u64 << 7 {
            let sub = Coalition::from_bits(x);
            let lifted = Coalition::from_bits(x << 2).union(veto);
            assert_eq!(reduced.is_winning(sub), original.is_winning(lifted));
        }
        assert!(reduce(&conj(&[4, 4, 4], &[2, 4, 7])).is_err());
    }

    #[test]
    fn closed_form_models_example() {
        let s = conj(&[4, 4, 4], &[2, 4, 7]);
        let models = shiftmax_models_closed_form(&s).unwrap();
        assert_eq!(
            models,
            vec![Model(vec![1, 4, 4]), Model(vec![3, 0, 4]), Model(vec![4, 2, 0])]
        );
        assert_eq!(shift_maximal_losing(&build(&s).unwrap()).unwrap(), models);
    }

    #[test]
    fn closed_form_with_dummies_has_m_minus_one_models() {
        let s = conj(&[3, 3, 4], &[2, 4, 4]);
        let models = shiftmax_models_closed_form(&s).unwrap();
        assert_eq!(models, vec![Model(vec![1, 3, 4]), Model(vec![3, 0, 4])]);
        assert_eq!(shift_maximal_losing(&build(&s).unwrap()).unwrap(), models);
    }

    #[test]
    fn os3_small_instances() {
        let (g, s) = os3_witness_set(2, 2).unwrap();
        assert_eq!(
            s,
            vec![Coalition::from_members([0, 2, 3]), Coalition::from_members([1, 4, 5])]
        );
        assert!(s.iter().all(|y| !g.is_winning(*y)));
        let (g, s) = os3_witness_set(2, 3).unwrap();
        assert_eq!(g.num_players(), 10);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|y| !g.is_winning(*y)));
    }

    #[test]
    fn delta1_examples() {
        let g = build_delta1([2, 2, 2], [1, 2, 3]).unwrap();
        assert!(g.is_winning(Coalition::singleton(0)));
        let g = build_delta1([2, 2, 2], [2, 2, 3]).unwrap();
        assert!(!g.is_winning(Coalition::singleton(2)));
        assert!(build_delta1([2, 2, 2], [3, 2, 3]).is_err());
    }
}
