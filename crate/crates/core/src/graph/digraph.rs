use std::fmt;

use serde::{Deserialize, Serialize};

use super::nodeset::{NodeSet, MAX_NODES};
use crate::error::{Error, Result};

/// A parent set together with a distinguished child, written `A -> b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct Family {
    parents: NodeSet,
    child: usize,
}

impl Family {
    pub fn new(parents: NodeSet, child: usize) -> Result<Self> {
        if !(1..=MAX_NODES).contains(&child) {
            return Err(Error::InvalidFamily(format!("child {child} out of range")));
        }
        if parents.contains(child) {
            return Err(Error::InvalidFamily(format!(
                "child {child} is among its own parents {parents}"
            )));
        }
        Ok(Family { parents, child })
    }

    /// Caller guarantees `child` is in range and not in `parents`.
    pub(crate) fn new_unchecked(parents: NodeSet, child: usize) -> Self {
        debug_assert!(!parents.contains(child));
        Family { parents, child }
    }

    #[inline]
    pub fn parents(&self) -> NodeSet {
        self.parents
    }

    #[inline]
    pub fn child(&self) -> usize {
        self.child
    }

    /// `A ∪ {b}`: the support of the corresponding factor column.
    #[inline]
    pub fn support(&self) -> NodeSet {
        self.parents.with(self.child)
    }

    /// Whether all parents precede the child (`max(A) < b`).
    #[inline]
    pub fn is_topologically_ordered(&self) -> bool {
        self.parents.max_node().is_none_or(|m| m < self.child)
    }

    pub fn fits(&self, n: usize) -> bool {
        self.child <= n && self.support().is_subset(NodeSet::full(n))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.parents, self.child)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    parents: Vec<usize>,
    child: usize,
}

impl TryFrom<FamilyRepr> for Family {
    type Error = Error;
    fn try_from(r: FamilyRepr) -> Result<Self> {
        if let Some(&bad) = r.parents.iter().find(|&&p| !(1..=MAX_NODES).contains(&p)) {
            return Err(Error::InvalidFamily(format!("parent {bad} out of range")));
        }
        Family::new(NodeSet::from_nodes(r.parents), r.child)
    }
}

impl From<Family> for FamilyRepr {
    fn from(f: Family) -> Self {
        FamilyRepr { parents: f.parents.to_vec(), child: f.child }
    }
}

/// A loopless directed graph on nodes `1..=n`, cycles allowed.
///
/// Ordering is lexicographic on the parent bitmasks, which fixes the order of
/// every set-valued output in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedGraph {
    n: usize,
    parents: Vec<NodeSet>,
}

impl DirectedGraph {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(DirectedGraph { n, parents: vec![NodeSet::EMPTY; n] })
    }

    /// Duplicate edges collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DirectedGraph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// `parents[b - 1]` is `pa(b)`.
    pub fn from_parents(parents: Vec<NodeSet>) -> Result<Self> {
        let n = parents.len();
        check_n(n)?;
        let full = NodeSet::full(n);
        for (i, &p) in parents.iter().enumerate() {
            let b = i + 1;
            if p.contains(b) {
                return Err(Error::SelfLoop(b));
            }
            if !p.is_subset(full) {
                let bad = p.difference(full).min_node().unwrap_or(0);
                return Err(Error::NodeOutOfRange { node: bad, n });
            }
        }
        Ok(DirectedGraph { n, parents })
    }

    /// Builds the graph whose node `b` has the family labeled with child `b`.
    pub fn from_families(n: usize, families: &[Family]) -> Result<Self> {
        check_n(n)?;
        if families.len() != n {
            return Err(Error::InvalidFamily(format!(
                "expected {n} families, got {}",
                families.len()
            )));
        }
        let mut parents = vec![None; n];
        for f in families {
            if !f.fits(n) {
                return Err(Error::InvalidFamily(format!("{f} does not fit n = {n}")));
            }
            let slot = &mut parents[f.child() - 1];
            if slot.is_some() {
                return Err(Error::InvalidFamily(format!("two families with child {}", f.child())));
            }
            *slot = Some(f.parents());
        }
        DirectedGraph::from_parents(parents.into_iter().map(|p| p.unwrap_or_default()).collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.parents[v - 1].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent(u, v));
        }
        self.parents[v - 1].remove(u);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (1..=self.n).contains(&v) && self.parents[v - 1].contains(u)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    #[inline]
    pub fn parents(&self, v: usize) -> NodeSet {
        self.parents[v - 1]
    }

    /// `fa(v) = pa(v) ∪ {v}`.
    #[inline]
    pub fn family_set(&self, v: usize) -> NodeSet {
        self.parents[v - 1].with(v)
    }

    pub fn family(&self, v: usize) -> Family {
        Family::new_unchecked(self.parents[v - 1], v)
    }

    /// One family per node, in node order.
    pub fn families(&self) -> Vec<Family> {
        self.nodes().map(|v| self.family(v)).collect()
    }

    pub fn children(&self, u: usize) -> NodeSet {
        self.nodes().filter(|&v| self.parents[v - 1].contains(u)).collect()
    }

    pub fn parent_sets(&self) -> &[NodeSet] {
        &self.parents
    }

    /// Edges `(u, v)` sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .nodes()
            .flat_map(|v| self.parents[v - 1].iter().map(move |u| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    pub fn has_two_cycle(&self) -> bool {
        self.nodes().any(|v| self.parents[v - 1].iter().any(|u| self.has_edge(v, u)))
    }

    /// Relabels node `v` as `perm[v - 1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for n = {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = NodeSet::EMPTY;
        for &p in perm {
            self.check_node(p)?;
            seen.insert(p);
        }
        if seen.len() != self.n {
            return Err(Error::InvalidParameter("relabeling is not a permutation".into()));
        }
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Self {
        let mut parents = vec![NodeSet::EMPTY; self.n];
        for v in self.nodes() {
            parents[perm[v - 1] - 1] = self.parents[v - 1].iter().map(|u| perm[u - 1]).collect();
        }
        DirectedGraph { n: self.n, parents }
    }

    pub(crate) fn set_parents(&mut self, v: usize, pa: NodeSet) {
        debug_assert!(!pa.contains(v));
        self.parents[v - 1] = pa;
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if (1..=self.n).contains(&v) {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_NODES).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidNodeCount(n))
    }
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}->{v}")).collect();
        write!(f, "DirectedGraph(n={}; {})", self.n, edges.join(", "))
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} -> {v}")?;
        }
        Ok(())
    }
}

/// A directed cycle `v1 -> v2 -> ... -> vk -> v1` with distinct nodes, `k >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Cycle {
    nodes: Vec<usize>,
}

impl Cycle {
    pub fn new(nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidCycle(format!("length {} < 2", nodes.len())));
        }
        let mut seen = NodeSet::EMPTY;
        for &v in &nodes {
            if !(1..=MAX_NODES).contains(&v) {
                return Err(Error::InvalidCycle(format!("node {v} out of range")));
            }
            if seen.contains(v) {
                return Err(Error::InvalidCycle(format!("node {v} repeated")));
            }
            seen.insert(v);
        }
        Ok(Cycle { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Consecutive pairs `(v_i, v_{i+1})`, wrapping around.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.nodes.len();
        (0..k).map(move |i| (self.nodes[i], self.nodes[(i + 1) % k]))
    }

    pub fn node_set(&self) -> NodeSet {
        NodeSet::from_nodes(self.nodes.iter().copied())
    }
}

impl TryFrom<Vec<usize>> for Cycle {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Cycle::new(v)
    }
}

impl From<Cycle> for Vec<usize> {
    fn from(c: Cycle) -> Self {
        c.nodes
    }
}

/// One elementary move on graphs or factor matrices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveRecord {
    /// `A -> b` and `A ∪ b -> c` become `A -> c` and `A ∪ c -> b`.
    CoveredFlip { parents: NodeSet, b: usize, c: usize },
    CycleReversal { cycle: Cycle },
    ColumnRelabel { old: Family, new: Family },
}

impl MoveRecord {
    pub fn covered_flip(parents: NodeSet, b: usize, c: usize) -> Result<Self> {
        if b == c || parents.contains(b) || parents.contains(c) {
            return Err(Error::InvalidFamily(format!(
                "covered flip needs distinct b, c outside A (A={parents}, b={b}, c={c})"
            )));
        }
        Ok(MoveRecord::CoveredFlip { parents, b, c })
    }

    pub fn column_relabel(old: Family, new: Family) -> Result<Self> {
        if old.support() != new.support() {
            return Err(Error::SupportMismatch(format!("{old} vs {new}")));
        }
        Ok(MoveRecord::ColumnRelabel { old, new })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_collapse_duplicates() {
        let g = DirectedGraph::from_edges(3, [(1, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
        assert_eq!(g.parents(2), NodeSet::singleton(1));
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert!(matches!(DirectedGraph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            DirectedGraph::from_edges(3, [(1, 4)]),
            Err(Error::NodeOutOfRange { node: 4, n: 3 })
        ));
        assert!(matches!(DirectedGraph::empty(17), Err(Error::InvalidNodeCount(17))));
        assert!(matches!(DirectedGraph::empty(0), Err(Error::InvalidNodeCount(0))));
    }

    #[test]
    fn family_rejects_child_in_parents() {
        assert!(Family::new(NodeSet::from_nodes([1, 2]), 2).is_err());
        let f = Family::new(NodeSet::from_nodes([1, 2]), 3).unwrap();
        assert_eq!(f.to_string(), "12->3");
        assert!(f.is_topologically_ordered());
        assert!(!Family::new(NodeSet::singleton(4), 2).unwrap().is_topologically_ordered());
    }

    #[test]
    fn relabel_roundtrip() {
        let g = DirectedGraph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let h = g.relabel(&[3, 2, 1]).unwrap();
        assert_eq!(h.edges(), vec![(2, 1), (3, 2)]);
        assert_eq!(h.relabel(&[3, 2, 1]).unwrap(), g);
        assert!(g.relabel(&[1, 1, 2]).is_err());
    }

    #[test]
    fn cycle_validation() {
        assert!(Cycle::new(vec![1]).is_err());
        assert!(Cycle::new(vec![1, 2, 1]).is_err());
        let c = Cycle::new(vec![2, 3, 4]).unwrap();
        assert_eq!(c.arcs().collect::<Vec<_>>(), vec![(2, 3), (3, 4), (4, 2)]);
    }

    #[test]
    fn move_record_invariants() {
        assert!(MoveRecord::covered_flip(NodeSet::singleton(1), 1, 2).is_err());
        assert!(MoveRecord::covered_flip(NodeSet::EMPTY, 2, 2).is_err());
        let old = Family::new(NodeSet::from_nodes([1, 2]), 3).unwrap();
        let new = Family::new(NodeSet::from_nodes([1, 3]), 2).unwrap();
        assert!(MoveRecord::column_relabel(old, new).is_ok());
        let bad = Family::new(NodeSet::singleton(1), 2).unwrap();
        assert!(MoveRecord::column_relabel(old, bad).is_err());
    }
}
