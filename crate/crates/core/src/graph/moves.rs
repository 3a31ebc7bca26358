//! Covered edge flips and cycle reversals.

use super::{Cycle, DirectedGraph, NodeSet};
use crate::error::{Error, Result};

#[inline]
pub fn is_covered(g: &DirectedGraph, i: usize, j: usize) -> bool {
    g.has_edge(i, j) && g.parents(j) == g.family_set(i)
}

/// Edges `i -> j` with `pa(j) = pa(i) ∪ {i}`, sorted.
pub fn covered_edges(g: &DirectedGraph) -> Vec<(usize, usize)> {
    g.edges().into_iter().filter(|&(i, j)| is_covered(g, i, j)).collect()
}

/// Reverses a covered edge; only the families of `i` and `j` change.
pub fn apply_covered_flip(g: &DirectedGraph, i: usize, j: usize) -> Result<DirectedGraph> {
    if !g.has_edge(i, j) {
        return Err(Error::EdgeAbsent(i, j));
    }
    if !is_covered(g, i, j) {
        return Err(Error::EdgeNotCovered(i, j));
    }
    let mut out = g.clone();
    out.set_parents(j, g.parents(j).without(i));
    out.set_parents(i, g.parents(i).with(j));
    Ok(out)
}

/// Reverses a directed cycle by rotating distinguished children: every cycle
/// node keeps its family set, which is handed to its cycle predecessor.
///
/// For `v_i -> v_{i+1}` the new parents of `v_i` are `fa(v_{i+1}) \ {v_i}`.
/// On a chordless cycle this is plain edge reversal; on a 2-cycle it swaps
/// the two parent sets around the shared edge pair.
pub fn reverse_cycle(g: &DirectedGraph, cycle: &Cycle) -> Result<DirectedGraph> {
    for (u, v) in cycle.arcs() {
        if v > g.n() || u > g.n() {
            return Err(Error::NodeOutOfRange { node: u.max(v), n: g.n() });
        }
        if !g.has_edge(u, v) {
            return Err(Error::InvalidCycle(format!(
                "{:?} is not a directed cycle of the graph ({u} -> {v} missing)",
                cycle.nodes()
            )));
        }
    }
    let mut out = g.clone();
    for (v, succ) in cycle.arcs() {
        out.set_parents(v, g.family_set(succ).without(v));
    }
    Ok(out)
}

/// All simple directed cycles of length >= 2, each listed once starting at
/// its smallest node. Exponential in general; intended for small `n`.
pub fn directed_cycles(g: &DirectedGraph) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for start in g.nodes() {
        path.clear();
        path.push(start);
        extend_cycles(g, start, NodeSet::singleton(start), &mut path, &mut out);
    }
    out
}

fn extend_cycles(
    g: &DirectedGraph,
    start: usize,
    on_path: NodeSet,
    path: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().expect("path never empty");
    for next in g.children(last) {
        if next == start && path.len() >= 2 {
            out.push(Cycle::new(path.clone()).expect("path nodes are distinct"));
        } else if next > start && !on_path.contains(next) {
            path.push(next);
            extend_cycles(g, start, on_path.with(next), path, out);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_is_covered_and_flips() {
        let a = g(2, &[(1, 2)]);
        assert_eq!(covered_edges(&a), vec![(1, 2)]);
        assert_eq!(apply_covered_flip(&a, 1, 2).unwrap(), g(2, &[(2, 1)]));
    }

    #[test]
    fn collider_has_no_covered_edges() {
        let a = g(3, &[(1, 3), (2, 3)]);
        assert!(covered_edges(&a).is_empty());
        assert!(matches!(apply_covered_flip(&a, 1, 3), Err(Error::EdgeNotCovered(1, 3))));
        assert!(matches!(apply_covered_flip(&a, 3, 1), Err(Error::EdgeAbsent(3, 1))));
    }

    #[test]
    fn flip_is_involution() {
        let a = g(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]);
        for (i, j) in covered_edges(&a) {
            let b = apply_covered_flip(&a, i, j).unwrap();
            assert_eq!(apply_covered_flip(&b, j, i).unwrap(), a);
        }
    }

    #[test]
    fn pure_three_cycle_reverses() {
        let a = g(3, &[(1, 2), (2, 3), (3, 1)]);
        let c = Cycle::new(vec![1, 2, 3]).unwrap();
        assert_eq!(reverse_cycle(&a, &c).unwrap(), g(3, &[(1, 3), (3, 2), (2, 1)]));
    }

    #[test]
    fn two_cycle_reversal_swaps_children() {
        // 3 -> 1 <-> 2: pa(1) = {2,3}, pa(2) = {1}; afterwards pa(1) = {2}, pa(2) = {1,3}.
        let a = g(3, &[(3, 1), (1, 2), (2, 1)]);
        let c = Cycle::new(vec![1, 2]).unwrap();
        assert_eq!(reverse_cycle(&a, &c).unwrap(), g(3, &[(2, 1), (1, 2), (3, 2)]));
    }

    #[test]
    fn reverse_rejects_non_cycle() {
        let a = g(3, &[(1, 2), (2, 3)]);
        let c = Cycle::new(vec![1, 2, 3]).unwrap();
        assert!(matches!(reverse_cycle(&a, &c), Err(Error::InvalidCycle(_))));
    }

    #[test]
    fn cycles_listed_once() {
        let a = g(3, &[(1, 2), (2, 3), (3, 1), (2, 1)]);
        let cs: Vec<Vec<usize>> = directed_cycles(&a).iter().map(|c| c.nodes().to_vec()).collect();
        assert_eq!(cs, vec![vec![1, 2], vec![1, 2, 3]]);
        assert!(directed_cycles(&g(3, &[(1, 2), (2, 3)])).is_empty());
    }
}
