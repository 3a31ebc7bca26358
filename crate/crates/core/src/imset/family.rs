//! Family-indexed integer vectors.
//!
//! Families `A -> b` with `b ∈ [n]`, `A ⊆ [n] \ {b}` are indexed child-major:
//! `index = (b - 1) * 2^(n-1) + compress(A, b)`, where `compress` deletes bit
//! `b - 1` from the mask of `A`. There are `n * 2^(n-1)` coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_n, DirectedGraph, Family, NodeSet};

pub fn family_count(n: usize) -> usize {
    n << (n - 1)
}

pub fn family_index(n: usize, f: Family) -> usize {
    debug_assert!(f.fits(n));
    let b = f.child();
    let bits = f.parents().bits() as usize;
    let low = bits & ((1 << (b - 1)) - 1);
    let high = (bits >> b) << (b - 1);
    ((b - 1) << (n - 1)) | low | high
}

pub fn family_at(n: usize, index: usize) -> Family {
    debug_assert!(index < family_count(n));
    let b = (index >> (n - 1)) + 1;
    let rest = index & ((1 << (n - 1)) - 1);
    let low = rest & ((1 << (b - 1)) - 1);
    let high = (rest >> (b - 1)) << b;
    Family::new_unchecked(NodeSet::from_bits((low | high) as u16), b)
}

/// All families for `n`, in index order.
pub fn all_families(n: usize) -> impl Iterator<Item = Family> {
    (0..family_count(n)).map(move |i| family_at(n, i))
}

/// Dense signed vector over families; the ambient space of the maps phi and psi.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FamilyVector {
    n: usize,
    values: Vec<i64>,
}

impl FamilyVector {
    pub fn zeros(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(FamilyVector { n, values: vec![0; family_count(n)] })
    }

    pub fn unit(n: usize, f: Family) -> Result<Self> {
        let mut v = FamilyVector::zeros(n)?;
        v.add(f, 1)?;
        Ok(v)
    }

    pub fn from_values(n: usize, values: Vec<i64>) -> Result<Self> {
        check_n(n)?;
        if values.len() != family_count(n) {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} families",
                values.len(),
                family_count(n)
            )));
        }
        Ok(FamilyVector { n, values })
    }

    /// The 0/1 family variable vector of a graph.
    pub fn of_graph(g: &DirectedGraph) -> Self {
        let n = g.n();
        let mut values = vec![0; family_count(n)];
        for f in g.families() {
            values[family_index(n, f)] = 1;
        }
        FamilyVector { n, values }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, f: Family) -> i64 {
        self.values[family_index(self.n, f)]
    }

    pub fn set(&mut self, f: Family, value: i64) -> Result<()> {
        self.check(f)?;
        let idx = family_index(self.n, f);
        self.values[idx] = value;
        Ok(())
    }

    pub fn add(&mut self, f: Family, delta: i64) -> Result<()> {
        self.check(f)?;
        let idx = family_index(self.n, f);
        self.values[idx] = self.values[idx].checked_add(delta).ok_or(Error::Overflow)?;
        Ok(())
    }

    /// `self += k * other`, overflow-checked.
    pub fn add_scaled(&mut self, k: i64, other: &FamilyVector) -> Result<()> {
        if other.n != self.n {
            return Err(Error::NodeCountMismatch(self.n, other.n));
        }
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            let t = b.checked_mul(k).ok_or(Error::Overflow)?;
            *a = a.checked_add(t).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn support_len(&self) -> usize {
        self.values.iter().filter(|&&x| x != 0).count()
    }

    /// Nonzero coordinates in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Family, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(move |(i, &x)| (family_at(self.n, i), x))
    }

    fn check(&self, f: Family) -> Result<()> {
        if f.fits(self.n) {
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("{f} does not fit n = {}", self.n)))
        }
    }
}

impl std::ops::Sub for &FamilyVector {
    type Output = FamilyVector;
    fn sub(self, rhs: &FamilyVector) -> FamilyVector {
        assert_eq!(self.n, rhs.n, "node count mismatch");
        FamilyVector {
            n: self.n,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for FamilyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzero().map(|(fam, x)| format!("{x:+}·[{fam}]")).collect();
        write!(f, "FamilyVector(n={}; {})", self.n, parts.join(" "))
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyEntry {
    #[serde(flatten)]
    pub family: Family,
    pub value: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FamilyVectorJson {
    pub n: usize,
    pub entries: Vec<FamilyEntry>,
}

impl From<&FamilyVector> for FamilyVectorJson {
    fn from(v: &FamilyVector) -> Self {
        FamilyVectorJson {
            n: v.n,
            entries: v.nonzero().map(|(family, value)| FamilyEntry { family, value }).collect(),
        }
    }
}

impl TryFrom<FamilyVectorJson> for FamilyVector {
    type Error = Error;
    fn try_from(j: FamilyVectorJson) -> Result<Self> {
        let mut v = FamilyVector::zeros(j.n)?;
        for e in j.entries {
            v.add(e.family, e.value)?;
        }
        Ok(v)
    }
}

impl Serialize for FamilyVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyVectorJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FamilyVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FamilyVectorJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// Nonnegative sparse exponent vector over families (a monomial `z^u`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FamilyExponent {
    n: usize,
    entries: Vec<(Family, u32)>,
}

impl FamilyExponent {
    /// Entries are merged, sorted by family index, and zero counts dropped.
    pub fn new(n: usize, entries: impl IntoIterator<Item = (Family, u32)>) -> Result<Self> {
        check_n(n)?;
        let mut merged: Vec<(usize, Family, u32)> = Vec::new();
        for (f, c) in entries {
            if !f.fits(n) {
                return Err(Error::InvalidFamily(format!("{f} does not fit n = {n}")));
            }
            merged.push((family_index(n, f), f, c));
        }
        merged.sort_by_key(|&(i, _, _)| i);
        let mut out: Vec<(Family, u32)> = Vec::with_capacity(merged.len());
        let mut last: Option<usize> = None;
        for (i, f, c) in merged {
            if last == Some(i) {
                let e = out.last_mut().expect("merge target exists");
                e.1 = e.1.checked_add(c).ok_or(Error::Overflow)?;
            } else {
                out.push((f, c));
                last = Some(i);
            }
        }
        out.retain(|&(_, c)| c > 0);
        Ok(FamilyExponent { n, entries: out })
    }

    pub fn of_graph(g: &DirectedGraph) -> Self {
        FamilyExponent { n: g.n(), entries: g.families().into_iter().map(|f| (f, 1)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(Family, u32)] {
        &self.entries
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c as u64).sum()
    }

    pub fn to_vector(&self) -> FamilyVector {
        let mut values = vec![0; family_count(self.n)];
        for &(f, c) in &self.entries {
            values[family_index(self.n, f)] += c as i64;
        }
        FamilyVector { n: self.n, values }
    }

    /// Whether this monomial is a graph monomial, and if so which graph.
    pub fn as_graph(&self) -> Option<DirectedGraph> {
        if self.entries.len() != self.n || self.entries.iter().any(|&(_, c)| c != 1) {
            return None;
        }
        let fams: Vec<Family> = self.entries.iter().map(|&(f, _)| f).collect();
        DirectedGraph::from_families(self.n, &fams).ok()
    }

    /// Two monomials are coprime when they share no variable.
    pub fn is_coprime(&self, other: &FamilyExponent) -> bool {
        self.entries.iter().all(|(f, _)| !other.entries.iter().any(|(g, _)| g == f))
    }
}

/// The family variable vector of a graph in sparse form.
pub fn family_vector(g: &DirectedGraph) -> FamilyExponent {
    FamilyExponent::of_graph(g)
}
