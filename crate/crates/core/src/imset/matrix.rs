use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, NodeSet};

/// Row or column legend entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Family(Family),
    Set(NodeSet),
    Index(usize),
}

/// Dense row-major exact integer matrix with legends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            row_labels: (0..rows).map(Label::Index).collect(),
            col_labels: (0..cols).map(Label::Index).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut m = IntMatrix::zeros(rows.len(), cols);
        m.data = rows.concat();
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch("column length differs from row count".into()));
        }
        let mut m = IntMatrix::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn with_labels(mut self, row_labels: Vec<Label>, col_labels: Vec<Label>) -> Result<Self> {
        if row_labels.len() != self.rows || col_labels.len() != self.cols {
            return Err(Error::DimensionMismatch("legend length".into()));
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Overflow-checked matrix-vector product.
    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(x).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// Submatrix on the given row and column positions, legends carried along.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m.row_labels = rows.iter().map(|&i| self.row_labels[i]).collect();
        m.col_labels = cols.iter().map(|&j| self.col_labels[j]).collect();
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct IntMatrixJson {
    rows: Vec<Label>,
    cols: Vec<Label>,
    data: Vec<Vec<i64>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntMatrixJson {
            rows: self.row_labels.clone(),
            cols: self.col_labels.clone(),
            data: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = IntMatrixJson::deserialize(d)?;
        let m = if j.data.is_empty() {
            IntMatrix::zeros(j.rows.len(), j.cols.len())
        } else {
            IntMatrix::from_rows(&j.data).map_err(serde::de::Error::custom)?
        };
        m.with_labels(j.rows, j.cols).map_err(serde::de::Error::custom)
    }
}
