use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{check_n, DirectedGraph, NodeSet, SkeletonMultiset};

/// Characteristic imset: dense over nonempty subsets, index = bitmask.
///
/// `values[0]` (the empty set) is kept at zero and never exposed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharImset {
    n: usize,
    values: Vec<i64>,
}

impl CharImset {
    pub fn zeros(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(CharImset { n, values: vec![0; 1 << n] })
    }

    /// `values` has length `2^n`; the entry at index 0 is ignored.
    pub fn from_dense(n: usize, mut values: Vec<i64>) -> Result<Self> {
        check_n(n)?;
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "{} values for 2^{n} subsets",
                values.len()
            )));
        }
        values[0] = 0;
        Ok(CharImset { n, values })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, s: NodeSet) -> i64 {
        self.values[s.index()]
    }

    pub fn set(&mut self, s: NodeSet, value: i64) {
        if !s.is_empty() {
            self.values[s.index()] = value;
        }
    }

    /// Dense storage including the unused empty-set slot.
    pub fn dense(&self) -> &[i64] {
        &self.values
    }

    /// Nonempty subsets with their values, in bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeSet, i64)> + '_ {
        (1..self.values.len()).map(move |i| (NodeSet::from_bits(i as u16), self.values[i]))
    }

    /// Whether every singleton coordinate equals 1 (the fiber contains graphs).
    pub fn has_unit_singletons(&self) -> bool {
        (1..=self.n).all(|b| self.get(NodeSet::singleton(b)) == 1)
    }

    pub fn is_zero_one(&self) -> bool {
        self.values.iter().all(|&x| x == 0 || x == 1)
    }

    /// First coordinate (size-then-lexicographic order) where the imsets differ.
    pub fn first_difference(&self, other: &CharImset) -> Option<(NodeSet, i64, i64)> {
        if self.n != other.n {
            return None;
        }
        subsets_by_size(self.n)
            .into_iter()
            .filter(|s| !s.is_empty())
            .find(|&s| self.get(s) != other.get(s))
            .map(|s| (s, self.get(s), other.get(s)))
    }

    pub fn differences(&self, other: &CharImset) -> Vec<(NodeSet, i64, i64)> {
        subsets_by_size(self.n)
            .into_iter()
            .filter(|s| !s.is_empty() && self.get(*s) != other.get(*s))
            .map(|s| (s, self.get(s), other.get(s)))
            .collect()
    }
}

impl fmt::Debug for CharImset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = subsets_by_size(self.n)
            .into_iter()
            .filter(|s| !s.is_empty() && self.get(*s) != 0)
            .map(|s| format!("{s}:{}", self.get(s)))
            .collect();
        write!(f, "CharImset(n={}; {})", self.n, parts.join(" "))
    }
}

/// Standard imset: sparse over all subsets including the empty set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StdImset {
    n: usize,
    entries: Vec<(NodeSet, i64)>,
}

impl StdImset {
    /// Entries are merged by set, sorted by bitmask, zeros dropped.
    pub fn new(n: usize, entries: impl IntoIterator<Item = (NodeSet, i64)>) -> Result<Self> {
        check_n(n)?;
        let full = NodeSet::full(n);
        let mut acc: BTreeMap<NodeSet, i64> = BTreeMap::new();
        for (s, v) in entries {
            if !s.is_subset(full) {
                return Err(Error::InvalidImset(format!("set {s} exceeds n = {n}")));
            }
            let slot = acc.entry(s).or_insert(0);
            *slot = slot.checked_add(v).ok_or(Error::Overflow)?;
        }
        Ok(StdImset { n, entries: acc.into_iter().filter(|&(_, v)| v != 0).collect() })
    }

    pub(crate) fn from_dense(n: usize, dense: &[i64]) -> Self {
        StdImset {
            n,
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (NodeSet::from_bits(i as u16), v))
                .collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero entries sorted by bitmask.
    pub fn entries(&self) -> &[(NodeSet, i64)] {
        &self.entries
    }

    pub fn get(&self, s: NodeSet) -> i64 {
        self.entries
            .binary_search_by_key(&s, |&(k, _)| k)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().map(|&(_, v)| v).sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut out = vec![0; 1 << self.n];
        for &(s, v) in &self.entries {
            out[s.index()] = v;
        }
        out
    }
}

impl fmt::Debug for StdImset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(s, v)| format!("{s}:{v}")).collect();
        write!(f, "StdImset(n={}; {})", self.n, parts.join(" "))
    }
}

/// `c(A) = #{a ∈ A : A \ {a} ⊆ pa(a)}`, accumulated per node over subsets of its parents.
pub fn char_imset(g: &DirectedGraph) -> CharImset {
    let n = g.n();
    let mut values = vec![0i64; 1 << n];
    for a in g.nodes() {
        let me = NodeSet::singleton(a);
        for t in g.parents(a).subsets() {
            values[(t | me).index()] += 1;
        }
    }
    CharImset { n, values }
}

/// `s = Σ_i (δ_fa(i) − δ_pa(i))`.
pub fn std_imset(g: &DirectedGraph) -> StdImset {
    let entries = g
        .nodes()
        .flat_map(|v| [(g.family_set(v), 1), (g.parents(v), -1)])
        .collect::<Vec<_>>();
    StdImset::new(g.n(), entries).expect("graph node count is valid")
}

/// `c(A) = Σ_{B ⊇ A} s(B)` by the in-place superset-sum sweep.
pub fn char_from_std(s: &StdImset) -> CharImset {
    let n = s.n();
    let mut v = s.to_dense();
    superset_zeta(n, &mut v);
    v[0] = 0;
    CharImset { n, values: v }
}

/// `s(B) = Σ_{A ⊇ B} (−1)^{|A \ B|} c(A)` for nonempty `B`; `s(∅)` restores the zero sum.
pub fn std_from_char(c: &CharImset) -> StdImset {
    let n = c.n();
    let mut v = c.values.clone();
    v[0] = 0;
    superset_mobius(n, &mut v);
    // With c(∅) = 0 the sweep already yields Σ s = c(∅) = 0; recompute to be explicit.
    v[0] = -v[1..].iter().sum::<i64>();
    StdImset::from_dense(n, &v)
}

pub(crate) fn superset_zeta(n: usize, v: &mut [i64]) {
    for bit in 0..n {
        let m = 1 << bit;
        for mask in 0..v.len() {
            if mask & m == 0 {
                v[mask] += v[mask | m];
            }
        }
    }
}

pub(crate) fn superset_mobius(n: usize, v: &mut [i64]) {
    for bit in 0..n {
        let m = 1 << bit;
        for mask in 0..v.len() {
            if mask & m == 0 {
                v[mask] -= v[mask | m];
            }
        }
    }
}

pub fn imset_equivalent(g: &DirectedGraph, h: &DirectedGraph) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::NodeCountMismatch(g.n(), h.n()));
    }
    Ok(char_imset(g) == char_imset(h))
}

/// Pair coordinates of a graph-derived imset give the skeleton multiplicities.
pub fn skeleton_from_char(c: &CharImset) -> Result<SkeletonMultiset> {
    if !c.has_unit_singletons() {
        return Err(Error::InvalidImset("singleton coordinates must all equal 1".into()));
    }
    let mut counts = BTreeMap::new();
    for a in 1..=c.n() {
        for b in a + 1..=c.n() {
            let m = c.get(NodeSet::from_nodes([a, b]));
            match m {
                0 => {}
                1 | 2 => {
                    counts.insert((a, b), m as u8);
                }
                _ => {
                    return Err(Error::InvalidImset(format!(
                        "pair coordinate {{{a},{b}}} = {m} outside 0..=2"
                    )))
                }
            }
        }
    }
    Ok(SkeletonMultiset::from_counts(c.n(), counts))
}

/// Subsets of `[n]` ordered by size, then lexicographically by sorted elements.
pub fn subsets_by_size(n: usize) -> Vec<NodeSet> {
    let mut all: Vec<NodeSet> = NodeSet::full(n).subsets().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::skeleton;

    fn g(n: usize, e: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::from_edges(n, e.iter().copied()).unwrap()
    }

    /// Direct evaluation of the defining count.
    fn char_by_definition(g: &DirectedGraph) -> Vec<i64> {
        let mut out = vec![0; 1 << g.n()];
        for s in NodeSet::full(g.n()).subsets().skip(1) {
            out[s.index()] =
                s.iter().filter(|&a| s.without(a).is_subset(g.parents(a))).count() as i64;
        }
        out
    }

    #[test]
    fn matches_definition_on_all_three_node_graphs() {
        for code in 0..64u32 {
            let mut parents = Vec::new();
            for b in 1..=3usize {
                let others: Vec<usize> = (1..=3).filter(|&x| x != b).collect();
                let bits = (code >> (2 * (b - 1))) & 3;
                parents.push(
                    others.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, &x)| x).collect(),
                );
            }
            let gr = DirectedGraph::from_parents(parents).unwrap();
            assert_eq!(char_imset(&gr).dense(), &char_by_definition(&gr)[..]);
            assert_eq!(char_imset(&gr).is_zero_one(), !gr.has_two_cycle());
        }
    }

    #[test]
    fn two_cycle_pair_coordinate() {
        let c = char_imset(&g(2, &[(1, 2), (2, 1)]));
        assert_eq!(c.get(NodeSet::from_nodes([1, 2])), 2);
    }

    #[test]
    fn empty_graph() {
        let c = char_imset(&DirectedGraph::empty(3).unwrap());
        for (s, v) in c.iter() {
            assert_eq!(v, (s.len() == 1) as i64);
        }
        let s = std_imset(&DirectedGraph::empty(3).unwrap());
        assert_eq!(s.get(NodeSet::EMPTY), -3);
        assert_eq!(s.nonzero_count(), 4);
    }

    #[test]
    fn single_edge_std() {
        let s = std_imset(&g(2, &[(1, 2)]));
        assert_eq!(
            s.entries(),
            &[(NodeSet::EMPTY, -1), (NodeSet::from_nodes([1, 2]), 1)]
        );
    }

    #[test]
    fn zero_std_gives_zero_char() {
        let s = StdImset::new(3, []).unwrap();
        assert!(char_from_std(&s).iter().all(|(_, v)| v == 0));
    }

    #[test]
    fn skeleton_roundtrip() {
        let gr = g(3, &[(1, 2), (2, 1), (2, 3)]);
        assert_eq!(skeleton_from_char(&char_imset(&gr)).unwrap(), skeleton(&gr));
        assert!(skeleton_from_char(&char_imset(&DirectedGraph::empty(3).unwrap())).unwrap().is_empty());
        assert!(skeleton_from_char(&CharImset::zeros(3).unwrap()).is_err());
    }

    #[test]
    fn size_order() {
        let order: Vec<String> = subsets_by_size(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(order, vec!["∅", "1", "2", "3", "12", "13", "23", "123"]);
    }
}
