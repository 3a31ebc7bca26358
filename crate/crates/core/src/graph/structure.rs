use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DirectedGraph, NodeSet};
use crate::error::{Error, Result};

/// Underlying undirected edges with multiplicity; a 2-cycle counts twice.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkeletonMultiset {
    n: usize,
    counts: BTreeMap<(usize, usize), u8>,
}

impl SkeletonMultiset {
    pub(crate) fn from_counts(n: usize, counts: BTreeMap<(usize, usize), u8>) -> Self {
        debug_assert!(counts.iter().all(|(&(a, b), &m)| a < b && (1..=2).contains(&m)));
        SkeletonMultiset { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u8 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.counts.get(&key).copied().unwrap_or(0)
    }

    /// Pairs `(a, b)` with `a < b` and nonzero multiplicity, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), u8)> + '_ {
        self.counts.iter().map(|(&k, &m)| (k, m))
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.counts
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }
}

pub fn skeleton(g: &DirectedGraph) -> SkeletonMultiset {
    let mut counts = BTreeMap::new();
    for (u, v) in g.edges() {
        let key = if u < v { (u, v) } else { (v, u) };
        *counts.entry(key).or_insert(0u8) += 1;
    }
    SkeletonMultiset { n: g.n(), counts }
}

/// Triples `(i, k, j)`, `i < j`, with `i -> k <- j` and `i`, `j` nonadjacent.
pub fn v_structures(g: &DirectedGraph) -> BTreeSet<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for k in g.nodes() {
        let pa: Vec<usize> = g.parents(k).to_vec();
        for (x, &i) in pa.iter().enumerate() {
            for &j in &pa[x + 1..] {
                if !g.adjacent(i, j) {
                    out.insert((i, k, j));
                }
            }
        }
    }
    out
}

/// Kahn's algorithm on parent sets.
pub fn is_acyclic(g: &DirectedGraph) -> bool {
    topological_order(g).is_some()
}

pub fn topological_order(g: &DirectedGraph) -> Option<Vec<usize>> {
    let mut placed = NodeSet::EMPTY;
    let mut order = Vec::with_capacity(g.n());
    while order.len() < g.n() {
        let next = g
            .nodes()
            .find(|&v| !placed.contains(v) && g.parents(v).is_subset(placed))?;
        placed.insert(next);
        order.push(next);
    }
    Some(order)
}

pub(crate) fn require_acyclic(g: &DirectedGraph) -> Result<()> {
    if is_acyclic(g) {
        Ok(())
    } else {
        Err(Error::Cyclic)
    }
}

/// Mixed graph with directed and undirected edges; undirected pairs have `u < v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PartiallyDirectedGraph {
    pub n: usize,
    pub directed: BTreeSet<(usize, usize)>,
    pub undirected: BTreeSet<(usize, usize)>,
}

impl PartiallyDirectedGraph {
    pub fn new(
        n: usize,
        directed: BTreeSet<(usize, usize)>,
        undirected: BTreeSet<(usize, usize)>,
    ) -> Result<Self> {
        for &(u, v) in &undirected {
            if u >= v {
                return Err(Error::InvalidParameter(format!("undirected pair ({u}, {v}) not ordered")));
            }
        }
        for &(u, v) in &directed {
            let key = if u < v { (u, v) } else { (v, u) };
            if undirected.contains(&key) {
                return Err(Error::InvalidParameter(format!(
                    "pair {{{u}, {v}}} is both directed and undirected"
                )));
            }
        }
        Ok(PartiallyDirectedGraph { n, directed, undirected })
    }
}
