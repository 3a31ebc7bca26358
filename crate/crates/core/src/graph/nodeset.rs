use std::fmt;

/// Largest supported node count. Dense imsets have `2^n - 1` coordinates.
pub const MAX_NODES: usize = 16;

/// A subset of `{1..n}` stored as a bitmask; node `v` lives in bit `v - 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeSet(u16);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    #[inline]
    pub const fn from_bits(bits: u16) -> Self {
        NodeSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u16 {
        self.0
    }

    /// Bitmask as an index into dense subset-indexed vectors.
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == MAX_NODES {
            NodeSet(u16::MAX)
        } else {
            NodeSet(((1u32 << n) - 1) as u16)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_NODES).contains(&v));
        NodeSet(1 << (v - 1))
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        nodes.into_iter().fold(NodeSet::EMPTY, |s, v| s.with(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_NODES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    #[inline]
    #[must_use]
    pub fn with(self, v: usize) -> Self {
        self | NodeSet::singleton(v)
    }

    #[inline]
    #[must_use]
    pub fn without(self, v: usize) -> Self {
        NodeSet(self.0 & !NodeSet::singleton(v).0)
    }

    pub fn insert(&mut self, v: usize) {
        *self = self.with(v);
    }

    pub fn remove(&mut self, v: usize) {
        *self = self.without(v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_superset(self, other: NodeSet) -> bool {
        other.is_subset(self)
    }

    #[inline]
    #[must_use]
    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    #[inline]
    #[must_use]
    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    #[inline]
    #[must_use]
    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    /// Largest element, if any.
    pub fn max_node(self) -> Option<usize> {
        (self.0 != 0).then(|| 16 - self.0.leading_zeros() as usize)
    }

    /// Smallest element, if any.
    pub fn min_node(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in increasing order, 1-based.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl std::ops::BitOr for NodeSet {
    type Output = NodeSet;
    fn bitor(self, rhs: NodeSet) -> NodeSet {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for NodeSet {
    type Output = NodeSet;
    fn bitand(self, rhs: NodeSet) -> NodeSet {
        self.intersection(rhs)
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_nodes(iter)
    }
}

impl IntoIterator for NodeSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u16);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u16,
    next: Option<u16>,
}

impl Iterator for Subsets {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        let cur = self.next?;
        // Standard submask enumeration in increasing order.
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(NodeSet(cur))
    }
}

/// Paper-style rendering: `124` for small ids, `{1,12}` otherwise, `∅` when empty.
impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if self.max_node().unwrap_or(0) < 10 {
            for v in self.iter() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeSet({self})")
    }
}

impl serde::Serialize for NodeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.to_vec(), s)
    }
}

impl<'de> serde::Deserialize<'de> for NodeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <Vec<usize> as serde::Deserialize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&x| !(1..=MAX_NODES).contains(&x)) {
            return Err(serde::de::Error::custom(format!("node {bad} out of range")));
        }
        Ok(NodeSet::from_nodes(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_layout() {
        let s = NodeSet::from_nodes([1, 3]);
        assert_eq!(s.bits(), 0b101);
        assert!(s.contains(1) && s.contains(3) && !s.contains(2));
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(s.max_node(), Some(3));
        assert_eq!(s.min_node(), Some(1));
        assert_eq!(NodeSet::EMPTY.max_node(), None);
    }

    #[test]
    fn full_set_at_cap() {
        assert_eq!(NodeSet::full(16).len(), 16);
        assert_eq!(NodeSet::full(3).bits(), 0b111);
        assert_eq!(NodeSet::full(16).max_node(), Some(16));
    }

    #[test]
    fn subsets_enumerated_in_order() {
        let s = NodeSet::from_nodes([2, 4]);
        let subs: Vec<u16> = s.subsets().map(|x| x.bits()).collect();
        assert_eq!(subs, vec![0, 0b0010, 0b1000, 0b1010]);
        assert_eq!(NodeSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(NodeSet::from_nodes([1, 2, 4]).to_string(), "124");
        assert_eq!(NodeSet::EMPTY.to_string(), "∅");
        assert_eq!(NodeSet::from_nodes([1, 12]).to_string(), "{1,12}");
    }
}
