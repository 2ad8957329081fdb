//! Oracles and generators shared by the integration tests.
//!
//! Games on at most six players are handled as truth tables: bit `p` of a
//! `u64` is set iff the coalition with mask `p` wins.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use sgdim::hierarchical::{dummy_players, validate_partiteness, HierarchicalSpec, Kind};
use sgdim::lpsep::separable;
use sgdim::{Coalition, SimpleGame};

/// All monotone truth tables on `n <= 6` players, via `f = f0 | x_n f1`
/// with `f0 <= f1`.
pub fn monotone_tables(n: usize) -> Vec<u64> {
    assert!(n <= 6);
    if n == 0 {
        return vec![0, 1];
    }
    let prev = monotone_tables(n - 1);
    let half = 1u32 << (n - 1);
    let mut out = Vec::new();
    for &f0 in &prev {
        for &f1 in &prev {
            if f0 & !f1 == 0 {
                out.push(f0 | (f1 << half));
            }
        }
    }
    out
}

pub fn table_game(f: u64, n: usize) -> SimpleGame {
    SimpleGame::new(n, (0..1u64 << n).filter(|p| f >> p & 1 == 1).map(Coalition::from_bits)).unwrap()
}

pub fn game_table(g: &SimpleGame) -> u64 {
    let n = g.num_players();
    (0..1u64 << n)
        .filter(|&p| g.is_winning(Coalition::from_bits(p)))
        .fold(0, |acc, p| acc | 1 << p)
}

/// Every truth position `p` with bit `i` set and bit `j` clear.
fn swap_mask(n: usize, i: usize, j: usize) -> u64 {
    (0..1usize << n)
        .filter(|p| p >> i & 1 == 1 && p >> j & 1 == 0)
        .fold(0, |acc, p| acc | 1 << p)
}

/// Canonical representatives of monotone tables under player permutations.
pub struct Canonizer {
    n: usize,
    masks: Vec<Vec<u64>>,
}

impl Canonizer {
    pub fn new(n: usize) -> Self {
        let masks = (0..n)
            .map(|i| (0..n).map(|j| if i < j { swap_mask(n, i, j) } else { 0 }).collect())
            .collect();
        Canonizer { n, masks }
    }

    fn swap(&self, f: u64, i: usize, j: usize) -> u64 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == j {
            return f;
        }
        let shift = (1u32 << j) - (1u32 << i);
        let t = (f ^ (f >> shift)) & self.masks[i][j];
        f ^ t ^ (t << shift)
    }

    /// Players are first sorted by a permutation-invariant signature (winning
    /// coalitions containing them, per size); the minimum table over the
    /// permutations inside equal-signature blocks is the representative.
    pub fn canonical(&self, f: u64) -> u64 {
        let n = self.n;
        let mut sig = vec![[0u32; 7]; n];
        for p in 0..1usize << n {
            if f >> p & 1 == 1 {
                let size = p.count_ones() as usize;
                for (i, s) in sig.iter_mut().enumerate() {
                    if p >> i & 1 == 1 {
                        s[size] += 1;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sig[b].cmp(&sig[a]));
        let mut g = f;
        let mut at: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let pos = at.iter().position(|&x| x == order[k]).unwrap();
            if pos != k {
                g = self.swap(g, k, pos);
                at.swap(k, pos);
            }
        }
        let mut blocks = Vec::new();
        let mut start = 0;
        for k in 1..=n {
            if k == n || sig[order[k]] != sig[order[start]] {
                if k - start > 1 {
                    blocks.push((start, k));
                }
                start = k;
            }
        }
        let mut best = g;
        self.permute_blocks(g, &blocks, &mut best);
        best
    }

    /// Heap's algorithm inside the first block, recursing into the rest.
    fn permute_blocks(&self, g: u64, blocks: &[(usize, usize)], best: &mut u64) {
        let Some(&(s, e)) = blocks.first() else {
            *best = (*best).min(g);
            return;
        };
        let len = e - s;
        let mut c = vec![0usize; len];
        let mut h = g;
        self.permute_blocks(h, &blocks[1..], best);
        let mut i = 0;
        while i < len {
            if c[i] < i {
                let a = if i % 2 == 0 { 0 } else { c[i] };
                h = self.swap(h, s + a, s + i);
                self.permute_blocks(h, &blocks[1..], best);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }
}

pub fn isomorphism_classes(n: usize) -> Vec<u64> {
    let canon = Canonizer::new(n);
    let set: HashSet<u64> = monotone_tables(n).into_iter().map(|f| canon.canonical(f)).collect();
    let mut out: Vec<u64> = set.into_iter().collect();
    out.sort_unstable();
    out
}

/// Every weighted truth table on `n` players, found by trying all integer
/// weights in `0..=max_weight` and every quota.
pub fn threshold_tables(n: usize, max_weight: u64) -> HashSet<u64> {
    let mut out = HashSet::new();
    let mut w = vec![0u64; n];
    loop {
        let sums: Vec<u64> = (0..1usize << n)
            .map(|p| (0..n).filter(|i| p >> i & 1 == 1).map(|i| w[i]).sum())
            .collect();
        let total: u64 = w.iter().sum();
        for q in 0..=total + 1 {
            let table = sums
                .iter()
                .enumerate()
                .filter(|(_, &s)| s >= q)
                .fold(0u64, |acc, (p, _)| acc | 1 << p);
            out.insert(table);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if w[i] < max_weight {
                w[i] += 1;
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// Keeps the members of `family` not strictly contained in another.
fn maximal_tables(family: Vec<u64>) -> Vec<u64> {
    family
        .iter()
        .copied()
        .filter(|&a| !family.iter().any(|&b| b != a && a & !b == 0))
        .collect()
}

/// Smallest number of `sets` whose union contains `target`.
fn min_cover(target: u64, sets: &[u64]) -> usize {
    fn search(left: u64, sets: &[u64], depth: usize) -> bool {
        if left == 0 {
            return true;
        }
        if depth == 0 {
            return false;
        }
        // Branch on the point with the fewest covering sets.
        let mut best: Option<(u32, usize)> = None;
        let mut rest = left;
        while rest != 0 {
            let p = rest.trailing_zeros();
            rest &= rest - 1;
            let count = sets.iter().filter(|&&s| s >> p & 1 == 1).count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((p, count));
            }
        }
        let (p, _) = best.unwrap();
        sets.iter()
            .filter(|&&s| s >> p & 1 == 1)
            .any(|&s| search(left & !s, sets, depth - 1))
    }
    (0..).find(|&d| search(target, sets, d)).unwrap()
}

/// Codimension straight from the definition: fewest weighted games inside
/// `f` whose union is `f`.
pub fn union_cover_codim(f: u64, weighted: &HashSet<u64>) -> usize {
    if weighted.contains(&f) {
        return 1;
    }
    let inside = maximal_tables(weighted.iter().copied().filter(|&t| t & !f == 0).collect());
    min_cover(f, &inside)
}

/// Dimension straight from the definition: fewest weighted games containing
/// `f` whose intersection is `f`.
pub fn intersection_cover_dim(f: u64, n: usize, weighted: &HashSet<u64>) -> usize {
    if weighted.contains(&f) {
        return 1;
    }
    let all = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    let losing = all & !f;
    let outside: Vec<u64> = weighted
        .iter()
        .filter(|&&t| f & !t == 0)
        .map(|&t| all & !t)
        .collect();
    min_cover(losing, &maximal_tables(outside))
}

/// Codimension by covering the minimal winning coalitions with groups, each
/// separable from the maximal losing coalitions; subsets checked by LP.
pub fn union_cover_codim_lp(g: &SimpleGame) -> usize {
    let n = g.num_players();
    let winning = g.min_winning();
    let losing = g.maximal_losing();
    if winning.is_empty() || losing.is_empty() {
        return 1;
    }
    assert!(winning.len() <= 16, "oracle limited to 16 minimal winning coalitions");
    let full = (1usize << winning.len()) - 1;
    let mut ok = vec![false; full + 1];
    ok[0] = true;
    for s in 1..=full {
        // Separable groups are closed under subsets.
        let sub_ok = (0..winning.len()).all(|i| s >> i & 1 == 0 || ok[s & !(1 << i)]);
        if !sub_ok {
            continue;
        }
        let group: Vec<Coalition> = (0..winning.len()).filter(|i| s >> i & 1 == 1).map(|i| winning[i]).collect();
        ok[s] = separable(n, &group, &losing).is_some();
    }
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        // Take the group containing the lowest uncovered coalition.
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let group = sub | low;
            if ok[group] && best[s & !group] != usize::MAX {
                best[s] = best[s].min(best[s & !group] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// A monotone game on `n` players spanned by a few random coalitions.
pub fn random_game<R: Rng>(rng: &mut R, n: usize, max_generators: usize) -> SimpleGame {
    let count = rng.gen_range(1..=max_generators);
    let full = (1u64 << n) - 1;
    let gens: Vec<Coalition> = (0..count).map(|_| Coalition::from_bits(rng.gen_range(1..=full))).collect();
    SimpleGame::new(n, gens).unwrap()
}

/// A truly partite conjunctive spec with at most `max_players` players.
/// With `dummies` the last threshold repeats, making the last class dummy.
pub fn random_conjunctive_spec<R: Rng>(rng: &mut R, max_classes: usize, max_players: usize, dummies: bool) -> HierarchicalSpec {
    loop {
        let m = rng.gen_range(if dummies { 2 } else { 1 }..=max_classes);
        let sizes: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=4)).collect();
        if sizes.iter().sum::<usize>() > max_players {
            continue;
        }
        let mut k = vec![rng.gen_range(1..=sizes[0])];
        let mut ok = true;
        for i in 1..m {
            let prev = k[i - 1];
            if dummies && i == m - 1 {
                k.push(prev);
            } else if sizes[i] >= 2 {
                k.push(rng.gen_range(prev + 1..prev + sizes[i]));
            } else {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let Ok(spec) = HierarchicalSpec::new(Kind::Conjunctive, sizes, k) else { continue };
        if !validate_partiteness(&spec).unwrap().true_m_partite {
            continue;
        }
        let has_dummies = !dummy_players(&spec).unwrap().is_empty();
        if has_dummies == dummies {
            return spec;
        }
    }
}
