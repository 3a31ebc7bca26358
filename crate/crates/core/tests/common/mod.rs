#![allow(dead_code)]

use cimset::graph::{DirectedGraph, NodeSet};
use proptest::prelude::*;

/// Graph whose node `v` has parents `masks[v-1]` restricted to the other nodes.
pub fn graph_from_masks(n: usize, masks: &[u16]) -> DirectedGraph {
    let full = (1u16 << n) - 1;
    let parents = (0..n).map(|i| NodeSet::from_bits(masks[i] & full & !(1 << i))).collect();
    DirectedGraph::from_parents(parents).unwrap()
}

pub fn arb_graph(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DirectedGraph> {
    n.prop_flat_map(|n| prop::collection::vec(any::<u16>(), n).prop_map(move |m| graph_from_masks(n, &m)))
}

/// Graph with an edge kept with probability about `density`.
pub fn arb_sparse_graph(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DirectedGraph> {
    n.prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.35), n), n).prop_map(move |bits| {
            let masks: Vec<u16> = bits
                .iter()
                .map(|row| row.iter().enumerate().filter(|(_, &b)| b).fold(0u16, |m, (i, _)| m | 1 << i))
                .collect();
            graph_from_masks(n, &masks)
        })
    })
}

/// Every loopless directed graph on `n` nodes.
pub fn all_graphs(n: usize) -> impl Iterator<Item = DirectedGraph> {
    let per = 1usize << (n - 1);
    (0..per.pow(n as u32)).map(move |mut code| {
        let parents = (1..=n)
            .map(|v| {
                let small = code % per;
                code /= per;
                // Spread the n-1 bits over every node except v.
                let mut mask = 0u16;
                let mut k = 0;
                for u in 1..=n {
                    if u != v {
                        if small >> k & 1 == 1 {
                            mask |= 1 << (u - 1);
                        }
                        k += 1;
                    }
                }
                NodeSet::from_bits(mask)
            })
            .collect();
        DirectedGraph::from_parents(parents).unwrap()
    })
}

/// `c(S) = #{i ∈ S : S \ i ⊆ pa(i)}`, straight from the definition, over nonempty `S`
/// in bitmask order.
pub fn naive_char(g: &DirectedGraph) -> Vec<i64> {
    let n = g.n();
    (1u16..(1 << n))
        .map(|bits| {
            let s = NodeSet::from_bits(bits);
            s.iter().filter(|&i| s.without(i).is_subset(g.parents(i))).count() as i64
        })
        .collect()
}

/// `s = Σ_v (δ_{fa(v)} − δ_{pa(v)})`, indexed by bitmask.
pub fn naive_std(g: &DirectedGraph) -> Vec<i64> {
    let mut s = vec![0i64; 1 << g.n()];
    for v in 1..=g.n() {
        s[g.parents(v).with(v).index()] += 1;
        s[g.parents(v).index()] -= 1;
    }
    s
}
