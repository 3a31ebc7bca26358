//! Sparse factors `Q` with `precision = Q Qᵀ`, and the exact moves on them.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Family, NodeSet};

/// Smallest magnitude accepted for a sampled diagonal entry.
pub const DIAGONAL_FLOOR: f64 = 0.1;
/// Determinant threshold, after scaling columns to unit length, below which a factor is singular.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Real `n × n` factor whose column `j` is supported on the family set of `labels[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorMatrix {
    labels: Vec<Family>,
    data: DMatrix<f64>,
}

impl FactorMatrix {
    pub fn new(labels: Vec<Family>, data: DMatrix<f64>) -> Result<Self> {
        let n = labels.len();
        if data.nrows() != n || data.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} data for {n} labels",
                data.nrows(),
                data.ncols()
            )));
        }
        for (j, f) in labels.iter().enumerate() {
            if !f.fits(n) {
                return Err(Error::InvalidFamily(format!("{f} does not fit n = {n}")));
            }
            let support = f.support();
            if let Some(i) = (0..n).find(|&i| !support.contains(i + 1) && data[(i, j)] != 0.0) {
                return Err(Error::SupportMismatch(format!(
                    "entry ({}, {}) is nonzero outside the support of {f}",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(FactorMatrix { labels, data })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Family] {
        &self.labels
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn column_of(&self, label: Family) -> Option<usize> {
        self.labels.iter().position(|&f| f == label)
    }

    /// The graph whose families are the labels, when every node is a child exactly once.
    pub fn graph(&self) -> Option<DirectedGraph> {
        DirectedGraph::from_families(self.n(), &self.labels).ok()
    }

    /// Row supports of the columns, as node sets.
    pub fn sparsity(&self) -> Vec<NodeSet> {
        (0..self.n())
            .map(|j| NodeSet::from_nodes((0..self.n()).filter(|&i| self.data[(i, j)] != 0.0).map(|i| i + 1)))
            .collect()
    }

    /// `|det|` after scaling every column to unit length.
    pub fn scaled_determinant(&self) -> f64 {
        scaled_det(&self.data)
    }
}

pub(crate) fn scaled_det(m: &DMatrix<f64>) -> f64 {
    let mut s = m.clone();
    for mut col in s.column_iter_mut() {
        let norm = col.norm();
        if norm == 0.0 {
            return 0.0;
        }
        col /= norm;
    }
    s.determinant().abs()
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    labels: Vec<Family>,
    data: Vec<Vec<f64>>,
}

impl Serialize for FactorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let data = self.data.row_iter().map(|r| r.iter().copied().collect()).collect();
        FactorJson { labels: self.labels.clone(), data }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FactorJson::deserialize(d)?;
        let n = j.labels.len();
        if j.data.len() != n || j.data.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom(format!("factor data must be {n}x{n}")));
        }
        let m = DMatrix::from_fn(n, n, |i, k| j.data[i][k]);
        FactorMatrix::new(j.labels, m).map_err(serde::de::Error::custom)
    }
}

/// Standard normal entries on each family support, drawn column by column in row order.
pub fn random_factor(g: &DirectedGraph, seed: u64) -> FactorMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let mut data = DMatrix::zeros(n, n);
    for j in 1..=n {
        for i in g.family_set(j) {
            let mut x: f64 = rng.sample(StandardNormal);
            if i == j {
                while x.abs() < DIAGONAL_FLOOR {
                    x = rng.sample(StandardNormal);
                }
            }
            data[(i - 1, j - 1)] = x;
        }
    }
    FactorMatrix { labels: g.families(), data }
}

/// `Q Qᵀ`, symmetrized.
pub fn precision_from_factor(q: &FactorMatrix) -> Result<DMatrix<f64>> {
    if q.scaled_determinant() < RANK_TOLERANCE {
        return Err(Error::RankDeficient);
    }
    let p = &q.data * q.data.transpose();
    Ok((&p + p.transpose()) * 0.5)
}

/// Rotates the columns labeled `A→b` and `A∪b→c` so that the second one loses row `b`.
///
/// With `u`, `v` those columns and `tan θ = v_b / u_b`, the new columns are
/// `cos θ·u + sin θ·v` (labeled `A∪c→b`) and `−sin θ·u + cos θ·v` (labeled `A→c`).
/// The columns keep their positions, and since the rotation is orthogonal `Q Qᵀ`
/// does not change.
pub fn givens_flip_factor(q: &FactorMatrix, a: NodeSet, b: usize, c: usize) -> Result<FactorMatrix> {
    let fb = Family::new(a, b)?;
    let fc = Family::new(a.with(b), c)?;
    let ju = q.column_of(fb).ok_or_else(|| Error::MissingLabel(fb.to_string()))?;
    let jv = q.column_of(fc).ok_or_else(|| Error::MissingLabel(fc.to_string()))?;
    let (ub, vb) = (q.data[(b - 1, ju)], q.data[(b - 1, jv)]);
    if ub == 0.0 {
        return Err(Error::DegeneratePivot { row: b, label: fb.to_string() });
    }
    let r = ub.hypot(vb);
    let (cos, sin) = (ub / r, vb / r);
    let mut out = q.clone();
    for i in 0..q.n() {
        let (u, v) = (q.data[(i, ju)], q.data[(i, jv)]);
        // Adding +0.0 turns a -0.0 into +0.0, keeping the output bytes stable.
        out.data[(i, ju)] = cos * u + sin * v + 0.0;
        out.data[(i, jv)] = -sin * u + cos * v + 0.0;
    }
    out.data[(b - 1, jv)] = 0.0;
    out.labels[ju] = Family::new(a.with(c), b)?;
    out.labels[jv] = Family::new(a, c)?;
    Ok(out)
}

/// Covered flip of the edge `i → j` in the graph the labels describe.
pub fn givens_flip_edge(q: &FactorMatrix, i: usize, j: usize) -> Result<FactorMatrix> {
    let g = q.graph().ok_or_else(|| Error::InvalidFamily("labels do not form a graph".into()))?;
    if !crate::graph::is_covered(&g, i, j) {
        return Err(if g.has_edge(i, j) { Error::EdgeNotCovered(i, j) } else { Error::EdgeAbsent(i, j) });
    }
    givens_flip_factor(q, g.parents(i), i, j)
}

/// Replaces a column label by another family on the same support.
pub fn relabel_column(q: &FactorMatrix, old: Family, new: Family) -> Result<FactorMatrix> {
    let j = q.column_of(old).ok_or_else(|| Error::MissingLabel(old.to_string()))?;
    if old.support() != new.support() {
        return Err(Error::SupportMismatch(format!("{old} and {new} have different supports")));
    }
    if q.data[(new.child() - 1, j)] == 0.0 {
        return Err(Error::DegeneratePivot { row: new.child(), label: old.to_string() });
    }
    let mut out = q.clone();
    out.labels[j] = new;
    Ok(out)
}
