use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, NodeSet, MAX_NODES};
use crate::imset::FamilyVector;

/// `e_{A→b} + e_{A∪b→c} − e_{A→c} − e_{A∪c→b}`.
///
/// The positive half is the exponent of a graph with the edge `b → c` covered,
/// the negative half the same graph after flipping it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlipVector {
    parents: NodeSet,
    b: usize,
    c: usize,
}

impl FlipVector {
    pub fn new(parents: NodeSet, b: usize, c: usize) -> Result<Self> {
        if b == c || b == 0 || c == 0 || b > MAX_NODES || c > MAX_NODES {
            return Err(Error::InvalidFamily(format!("flip needs two distinct nodes, got {b}, {c}")));
        }
        if parents.contains(b) || parents.contains(c) {
            return Err(Error::InvalidFamily(format!(
                "flip base set {parents} must avoid {b} and {c}"
            )));
        }
        Ok(FlipVector { parents, b, c })
    }

    pub fn parents(&self) -> NodeSet {
        self.parents
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Families with coefficient +1, then those with coefficient −1.
    pub fn terms(&self) -> ([Family; 2], [Family; 2]) {
        let a = self.parents;
        let f = Family::new_unchecked;
        (
            [f(a, self.b), f(a.with(self.b), self.c)],
            [f(a, self.c), f(a.with(self.c), self.b)],
        )
    }

    /// Smallest node count whose family space contains this vector.
    pub fn min_nodes(&self) -> usize {
        self.parents.with(self.b).with(self.c).max_node().expect("nonempty")
    }

    pub fn to_vector(&self, n: usize) -> Result<FamilyVector> {
        if n < self.min_nodes() {
            return Err(Error::NodeOutOfRange { node: self.min_nodes(), n });
        }
        let mut v = FamilyVector::zeros(n)?;
        let (pos, neg) = self.terms();
        for f in pos {
            v.add(f, 1)?;
        }
        for f in neg {
            v.add(f, -1)?;
        }
        Ok(v)
    }
}

impl fmt::Display for FlipVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ([p1, p2], [m1, m2]) = self.terms();
        write!(f, "e[{p1}] + e[{p2}] - e[{m1}] - e[{m2}]")
    }
}

/// One flip vector per base set `A` and unordered pair `{b, c}`, stored with `b < c`.
///
/// Ordered by `(b, c)` and then by the bitmask of `A`.
pub fn flip_vectors(n: usize) -> Result<Vec<FlipVector>> {
    if !(2..=MAX_NODES).contains(&n) {
        return Err(Error::InvalidParameter(format!("flip vectors need 2 <= n <= {MAX_NODES}, got {n}")));
    }
    let mut out = Vec::new();
    for b in 1..=n {
        for c in b + 1..=n {
            for a in NodeSet::full(n).without(b).without(c).subsets() {
                out.push(FlipVector { parents: a, b, c });
            }
        }
    }
    Ok(out)
}
