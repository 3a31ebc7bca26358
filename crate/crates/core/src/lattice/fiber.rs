//! Imset fibers: all graphs sharing one characteristic imset, and how moves connect them.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    apply_covered_flip, canonical_form, covered_edges, directed_cycles, reverse_cycle,
    DirectedGraph, Family, GraphJson, NodeSet,
};
use crate::imset::{char_imset, skeleton_from_char, CharImset, FamilyExponent, ImsetJson};

pub const FIBER_MAX_NODES: usize = 6;
pub const DEFAULT_CANDIDATE_LIMIT: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug)]
pub struct FiberOptions {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Abort once this many partial assignments have been tried.
    pub limit: u64,
}

impl Default for FiberOptions {
    fn default() -> Self {
        FiberOptions { jobs: 1, limit: DEFAULT_CANDIDATE_LIMIT }
    }
}

/// Graphs with a given characteristic imset, sorted and labelled (not up to isomorphism).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    imset: CharImset,
    graphs: Vec<DirectedGraph>,
}

impl Fiber {
    pub fn imset(&self) -> &CharImset {
        &self.imset
    }

    pub fn graphs(&self) -> &[DirectedGraph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn index_of(&self, g: &DirectedGraph) -> Option<usize> {
        self.graphs.binary_search(g).ok()
    }

    pub fn contains(&self, g: &DirectedGraph) -> bool {
        self.index_of(g).is_some()
    }

    /// For each member, the index of its isomorphism class; classes are numbered
    /// in order of their first member.
    pub fn iso_classes(&self) -> Result<(Vec<usize>, usize)> {
        let mut seen: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        let mut class = Vec::with_capacity(self.graphs.len());
        for g in &self.graphs {
            let key = canonical_form(g)?;
            let next = seen.len();
            class.push(*seen.entry(key).or_insert(next));
        }
        Ok((class, seen.len()))
    }
}

struct Search<'a> {
    n: usize,
    target: &'a CharImset,
    candidates: Vec<Vec<NodeSet>>,
    tried: &'a AtomicU64,
    limit: u64,
}

impl Search<'_> {
    /// Checks every coordinate whose largest element is `k`; all of its members
    /// already have parent sets.
    fn consistent(&self, k: usize, pa: &[NodeSet]) -> bool {
        NodeSet::full(k - 1).subsets().all(|t| {
            if t.is_empty() {
                return true;
            }
            let s = t.with(k);
            let count = s.iter().filter(|&a| s.without(a).is_subset(pa[a - 1])).count() as i64;
            count == self.target.get(s)
        })
    }

    fn descend(&self, k: usize, pa: &mut Vec<NodeSet>, out: &mut Vec<DirectedGraph>) -> Result<()> {
        if k > self.n {
            out.push(DirectedGraph::from_parents(pa.clone())?);
            return Ok(());
        }
        for &p in &self.candidates[k - 1] {
            self.try_one(k, p, pa, out)?;
        }
        Ok(())
    }

    fn try_one(&self, k: usize, p: NodeSet, pa: &mut Vec<NodeSet>, out: &mut Vec<DirectedGraph>) -> Result<()> {
        let tried = self.tried.fetch_add(1, Ordering::Relaxed) + 1;
        if tried > self.limit {
            return Err(Error::SearchSpaceExceeded { explored: tried - 1, limit: self.limit });
        }
        pa[k - 1] = p;
        if self.consistent(k, pa) {
            self.descend(k + 1, pa, out)?;
        }
        pa[k - 1] = NodeSet::EMPTY;
        Ok(())
    }
}

pub fn fiber_enumerate(c: &CharImset) -> Result<Fiber> {
    fiber_enumerate_with(c, &FiberOptions::default())
}

/// Every graph `G` with `char_imset(G) = c`.
///
/// Pair coordinates fix the skeleton: a node's parents lie among its neighbors
/// and must include the partners of doubled pairs. Nodes are assigned in order
/// and each coordinate is checked as soon as its largest node is assigned.
pub fn fiber_enumerate_with(c: &CharImset, opts: &FiberOptions) -> Result<Fiber> {
    let n = c.n();
    if n > FIBER_MAX_NODES {
        return Err(Error::TooLarge { what: "fiber_enumerate", n, max: FIBER_MAX_NODES });
    }
    let sk = skeleton_from_char(c)?;
    let candidates = (1..=n)
        .map(|v| {
            let forced = NodeSet::from_nodes(
                sk.neighbors(v).iter().filter(|&u| sk.multiplicity(u, v) == 2),
            );
            let free = sk.neighbors(v).difference(forced);
            free.subsets().map(|s| s.union(forced)).collect()
        })
        .collect();
    let tried = AtomicU64::new(0);
    let search = Search { n, target: c, candidates, tried: &tried, limit: opts.limit };

    let shard = |p: NodeSet| -> Result<Vec<DirectedGraph>> {
        let mut pa = vec![NodeSet::EMPTY; n];
        let mut out = Vec::new();
        search.try_one(1, p, &mut pa, &mut out)?;
        Ok(out)
    };
    let first = search.candidates[0].clone();
    let parts: Vec<Vec<DirectedGraph>> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| first.par_iter().map(|&p| shard(p)).collect::<Result<_>>())?
    } else {
        first.iter().map(|&p| shard(p)).collect::<Result<_>>()?
    };

    let mut graphs: Vec<DirectedGraph> = parts.into_iter().flatten().collect();
    graphs.sort();
    graphs.dedup();
    debug_assert!(graphs.iter().all(|g| &char_imset(g) == c));
    Ok(Fiber { imset: c.clone(), graphs })
}

/// Which moves may connect fiber members.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MoveSet {
    pub covered_flips: bool,
    pub cycle_reversals: bool,
}

impl MoveSet {
    pub const FLIPS: MoveSet = MoveSet { covered_flips: true, cycle_reversals: false };
    pub const ALL: MoveSet = MoveSet { covered_flips: true, cycle_reversals: true };

    /// Comma-separated list drawn from `flips` and `cycles`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut m = MoveSet::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "flips" => m.covered_flips = true,
                "cycles" => m.cycle_reversals = true,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown move '{other}' (expected flips or cycles)"
                    )))
                }
            }
        }
        Ok(m)
    }

    /// Graphs reachable from `g` by one move, with no membership filter.
    pub fn neighbors(&self, g: &DirectedGraph) -> Vec<DirectedGraph> {
        let mut out = Vec::new();
        if self.covered_flips {
            for (i, j) in covered_edges(g) {
                out.push(apply_covered_flip(g, i, j).expect("edge is covered"));
            }
        }
        if self.cycle_reversals {
            for cyc in directed_cycles(g) {
                out.push(reverse_cycle(g, &cyc).expect("cycle comes from the graph"));
            }
        }
        out
    }
}

/// Partition of a fiber's member indices; each part sorted, parts ordered by first member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveComponents {
    pub components: Vec<Vec<usize>>,
}

impl MoveComponents {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn parts(mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.0.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}

/// Single moves that leave the fiber are ignored.
fn move_edges(f: &Fiber, moves: MoveSet) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, g) in f.graphs.iter().enumerate() {
        for h in moves.neighbors(g) {
            if let Some(j) = f.index_of(&h) {
                if i != j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges
}

pub fn fiber_move_components(f: &Fiber, moves: MoveSet) -> MoveComponents {
    let mut uf = UnionFind::new(f.len());
    for (i, j) in move_edges(f, moves) {
        uf.union(i, j);
    }
    MoveComponents { components: uf.parts() }
}

/// Collapses a fiber to one representative per isomorphism class.
///
/// Two classes share a component when some of their members are joined by a move,
/// so the returned components partition the representatives.
pub fn collapse_isomorphic(f: &Fiber, moves: MoveSet) -> Result<(Vec<DirectedGraph>, MoveComponents)> {
    let (class, k) = f.iso_classes()?;
    let mut reps: Vec<Option<DirectedGraph>> = vec![None; k];
    for (g, &c) in f.graphs.iter().zip(&class) {
        reps[c].get_or_insert_with(|| g.clone());
    }
    let mut uf = UnionFind::new(k);
    for (i, j) in move_edges(f, moves) {
        uf.union(class[i], class[j]);
    }
    let reps = reps.into_iter().map(|g| g.expect("every class has a member")).collect();
    Ok((reps, MoveComponents { components: uf.parts() }))
}

/// `{"imset": .., "graphs": [..], "components": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberJson {
    pub imset: ImsetJson,
    pub graphs: Vec<GraphJson>,
    pub components: Vec<Vec<usize>>,
}

impl FiberJson {
    pub fn new(imset: &CharImset, graphs: &[DirectedGraph], components: &MoveComponents) -> Self {
        FiberJson {
            imset: ImsetJson::from_char(imset, false),
            graphs: graphs.iter().map(GraphJson::from).collect(),
            components: components.components.clone(),
        }
    }
}

/// Exponents of `z_{i1→i2} ⋯ z_{ik→i1}` and `z_{i1→ik} ⋯ z_{i2→i1}`.
pub fn cycle_generator_exponents(n: usize, seq: &[usize]) -> Result<(FamilyExponent, FamilyExponent)> {
    let k = seq.len();
    if k < 3 {
        return Err(Error::InvalidCycle(format!("need at least 3 nodes, got {k}")));
    }
    if let Some(&v) = seq.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::NodeOutOfRange { node: v, n });
    }
    if NodeSet::from_nodes(seq.iter().copied()).len() != k {
        return Err(Error::InvalidCycle(format!("repeated node in {seq:?}")));
    }
    let arc = |u: usize, v: usize| (Family::new_unchecked(NodeSet::singleton(u), v), 1u32);
    let forward = (0..k).map(|i| arc(seq[i], seq[(i + 1) % k]));
    let backward = (0..k).map(|i| arc(seq[(i + 1) % k], seq[i]));
    Ok((FamilyExponent::new(n, forward)?, FamilyExponent::new(n, backward)?))
}
