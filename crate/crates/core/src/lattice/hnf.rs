//! Exact integer elimination: row Hermite normal form and integer kernels.
//!
//! A lattice is stored as the row space of an integer matrix. Unimodular row
//! operations preserve it, so the reduced row echelon form with positive pivots
//! and entries above each pivot in `[0, pivot)` is a canonical representative.
//! Columns are scanned left to right (lowest coordinate index first) and the pivot
//! row is always the one with the smallest nonzero magnitude, ties going to the
//! lowest row, which keeps the procedure deterministic and the entries small.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::imset::{all_families, family_count, IntMatrix, Label};

fn sub_scaled(dst: &mut [i64], q: i64, src: &[i64]) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            let t = s.checked_mul(q).ok_or(Error::Overflow)?;
            *d = d.checked_sub(t).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

fn negate(row: &mut [i64]) -> Result<()> {
    for x in row.iter_mut() {
        *x = x.checked_neg().ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Brings `rows` to echelon form on the first `pivot_cols` columns and returns the rank.
///
/// Rows at positions `rank..` are zero on those columns afterwards. With
/// `reduce_above`, entries above each pivot are reduced into `[0, pivot)`.
pub(crate) fn echelon(rows: &mut [Vec<i64>], pivot_cols: usize, reduce_above: bool) -> Result<usize> {
    let m = rows.len();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == m {
            break;
        }
        let mut found = false;
        loop {
            let pick = (r..m)
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| (rows[i][col].unsigned_abs(), i));
            let Some(p) = pick else { break };
            found = true;
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pv = pivot_row[col];
            let mut clean = true;
            for row in tail.iter_mut() {
                let x = row[col];
                if x != 0 {
                    sub_scaled(row, x.div_euclid(pv), pivot_row)?;
                    clean &= row[col] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if rows[r][col] < 0 {
            negate(&mut rows[r])?;
        }
        if reduce_above {
            let (head, tail) = rows.split_at_mut(r);
            let pivot_row = &tail[0];
            let pv = pivot_row[col];
            for row in head.iter_mut() {
                let q = row[col].div_euclid(pv);
                sub_scaled(row, q, pivot_row)?;
            }
        }
        r += 1;
    }
    Ok(r)
}

/// Row Hermite normal form of the lattice spanned by `generators`, zero rows dropped.
pub fn hermite_normal_form(dim: usize, generators: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if let Some(g) = generators.iter().find(|g| g.len() != dim) {
        return Err(Error::DimensionMismatch(format!("generator of length {} in dimension {dim}", g.len())));
    }
    let mut rows = generators.to_vec();
    let rank = echelon(&mut rows, dim, true)?;
    rows.truncate(rank);
    Ok(rows)
}

/// An integer lattice in `Z^dim`, held as its Hermite normal form basis.
///
/// Two lattices are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    /// Number of nodes when the ambient coordinates are families.
    family_n: Option<usize>,
    rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    /// The lattice generated by arbitrary integer vectors.
    pub fn span(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        Ok(LatticeBasis { dim, family_n: None, rows: hermite_normal_form(dim, generators)? })
    }

    /// Same as `span`, over family coordinates for `n` nodes.
    pub fn span_families(n: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut l = LatticeBasis::span(family_count(n), generators)?;
        l.family_n = Some(n);
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis vectors in Hermite normal form order.
    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Basis vectors as the columns of a matrix, rows carrying family legends when known.
    pub fn basis(&self) -> IntMatrix {
        let m = IntMatrix::from_columns(self.dim, &self.rows).expect("lengths checked");
        match self.family_n {
            Some(n) => {
                let rows = all_families(n).map(Label::Family).collect();
                let cols = (0..self.rows.len()).map(Label::Index).collect();
                m.with_labels(rows, cols).expect("legend lengths match")
            }
            None => m,
        }
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), self.dim)));
        }
        let mut gens = self.rows.clone();
        gens.push(v.to_vec());
        Ok(hermite_normal_form(self.dim, &gens)? == self.rows)
    }
}

impl Serialize for LatticeBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis().serialize(s)
    }
}

pub fn lattices_equal(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!("lattices in dimensions {} and {}", a.dim, b.dim)));
    }
    Ok(a.rows == b.rows)
}

/// Basis of `{v ∈ Z^cols : M v = 0}`.
///
/// Row-reduces `[Mᵀ | I]`; the identity part of every row whose `Mᵀ` part
/// vanishes is a kernel vector, and together those rows form a lattice basis
/// because the accumulated transformation is unimodular.
pub fn integer_kernel_basis(m: &IntMatrix) -> Result<LatticeBasis> {
    let (r, d) = (m.rows(), m.cols());
    let mut aug: Vec<Vec<i64>> = (0..d)
        .map(|j| {
            let mut row = m.column(j);
            row.resize(r + d, 0);
            row[r + j] = 1;
            row
        })
        .collect();
    let rank = echelon(&mut aug, r, false)?;
    let kernel: Vec<Vec<i64>> = aug[rank..].iter().map(|row| row[r..].to_vec()).collect();
    let family_n = match m.col_labels().first() {
        Some(Label::Family(_)) => (1..=crate::graph::MAX_NODES).find(|&n| family_count(n) == d),
        _ => None,
    };
    let mut l = LatticeBasis::span(d, &kernel)?;
    l.family_n = family_n;
    Ok(l)
}
