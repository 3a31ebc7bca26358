use super::DirectedGraph;
use crate::error::{Error, Result};

/// Largest `n` accepted by the exhaustive permutation search.
pub const CANONICAL_MAX_NODES: usize = 8;

/// Minimum over all relabelings of the little-endian parent-mask sequence.
/// Two graphs are isomorphic iff their canonical forms are equal.
pub fn canonical_form(g: &DirectedGraph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > CANONICAL_MAX_NODES {
        return Err(Error::TooLarge { what: "canonical_form", n, max: CANONICAL_MAX_NODES });
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut best = serialize(&g.relabel_unchecked(&perm));
    while next_permutation(&mut perm) {
        let cand = serialize(&g.relabel_unchecked(&perm));
        if cand < best {
            best = cand;
        }
    }
    Ok(best)
}

pub fn isomorphic(g: &DirectedGraph, h: &DirectedGraph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

fn serialize(g: &DirectedGraph) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 2 * g.n());
    out.push(g.n() as u8);
    for p in g.parent_sets() {
        out.extend_from_slice(&p.bits().to_le_bytes());
    }
    out
}

/// Lexicographic successor; returns false after the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
