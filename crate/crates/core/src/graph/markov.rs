//! Markov equivalence for DAGs: structural test, class enumeration, essential graphs.

use std::collections::{BTreeSet, VecDeque};

use super::moves::{apply_covered_flip, covered_edges};
use super::structure::{require_acyclic, skeleton, v_structures, PartiallyDirectedGraph};
use super::DirectedGraph;
use crate::error::{Error, Result};

/// Same skeleton and same v-structures.
pub fn markov_equivalent_dags(g: &DirectedGraph, h: &DirectedGraph) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::NodeCountMismatch(g.n(), h.n()));
    }
    require_acyclic(g)?;
    require_acyclic(h)?;
    Ok(skeleton(g) == skeleton(h) && v_structures(g) == v_structures(h))
}

/// Breadth-first closure under covered edge flips, sorted by parent bitmasks.
pub fn enumerate_dag_class(g: &DirectedGraph) -> Result<Vec<DirectedGraph>> {
    require_acyclic(g)?;
    let mut seen: BTreeSet<DirectedGraph> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back(g.clone());
    while let Some(cur) = queue.pop_front() {
        for (i, j) in covered_edges(&cur) {
            let next = apply_covered_flip(&cur, i, j)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Edges whose orientation varies across the class become undirected.
pub fn essential_graph(g: &DirectedGraph) -> Result<PartiallyDirectedGraph> {
    let class = enumerate_dag_class(g)?;
    let mut directed = BTreeSet::new();
    let mut undirected = BTreeSet::new();
    for (u, v) in g.edges() {
        if class.iter().any(|m| m.has_edge(v, u)) {
            undirected.insert((u.min(v), u.max(v)));
        } else {
            directed.insert((u, v));
        }
    }
    PartiallyDirectedGraph::new(g.n(), directed, undirected)
}
