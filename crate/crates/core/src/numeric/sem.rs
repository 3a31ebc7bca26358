use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::factor::{scaled_det, FactorMatrix, RANK_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Linear SEM `X = ΛX + ε`, `Cov(ε) = diag(ω)`; `Λ[i][j]` is the weight of `j → i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemParams {
    pub lambda: DMatrix<f64>,
    pub omega: DVector<f64>,
}

impl SemParams {
    /// Checks shapes, a zero diagonal, and positive error variances.
    pub fn new(lambda: DMatrix<f64>, omega: DVector<f64>) -> Result<Self> {
        let n = omega.len();
        if lambda.nrows() != n || lambda.ncols() != n {
            return Err(Error::DimensionMismatch(format!("Lambda must be {n}x{n}")));
        }
        if (0..n).any(|i| lambda[(i, i)] != 0.0) {
            return Err(Error::InvalidParameter("Lambda must have a zero diagonal".into()));
        }
        if omega.iter().any(|&w| w.is_nan() || w <= 0.0 || !w.is_finite()) {
            return Err(Error::InvalidParameter("Omega entries must be positive".into()));
        }
        Ok(SemParams { lambda, omega })
    }

    /// Like `new`, additionally requiring `Λ` to vanish off the edges of `g`.
    pub fn for_graph(g: &DirectedGraph, lambda: DMatrix<f64>, omega: DVector<f64>) -> Result<Self> {
        if omega.len() != g.n() {
            return Err(Error::NodeCountMismatch(omega.len(), g.n()));
        }
        let p = SemParams::new(lambda, omega)?;
        for i in 1..=g.n() {
            for j in 1..=g.n() {
                if i != j && p.lambda[(i - 1, j - 1)] != 0.0 && !g.has_edge(j, i) {
                    return Err(Error::SupportMismatch(format!("Lambda[{i}][{j}] set but {j} -> {i} is not an edge")));
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    fn i_minus_lambda(&self) -> Result<DMatrix<f64>> {
        let m = DMatrix::identity(self.n(), self.n()) - &self.lambda;
        if scaled_det(&m) < RANK_TOLERANCE {
            return Err(Error::SingularSem);
        }
        Ok(m)
    }
}

/// Standard normal edge weights and error variances uniform on `[0.5, 2)`.
pub fn random_sem(g: &DirectedGraph, seed: u64) -> SemParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let mut lambda = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        lambda[(v - 1, u - 1)] = rng.sample(StandardNormal);
    }
    let omega = DVector::from_fn(n, |_, _| rng.random_range(0.5..2.0));
    SemParams { lambda, omega }
}

/// `(I − Λ)ᵀ Ω⁻¹ (I − Λ)`.
pub fn precision_from_sem(p: &SemParams) -> Result<DMatrix<f64>> {
    let m = p.i_minus_lambda()?;
    let inv = DMatrix::from_diagonal(&p.omega.map(|w| 1.0 / w));
    let k = m.transpose() * inv * &m;
    Ok((&k + k.transpose()) * 0.5)
}

/// `Q = (I − Λ)ᵀ Ω^(−1/2)`, labeled by the families of `g`.
pub fn factor_from_sem(p: &SemParams, g: &DirectedGraph) -> Result<FactorMatrix> {
    if p.n() != g.n() {
        return Err(Error::NodeCountMismatch(p.n(), g.n()));
    }
    let m = p.i_minus_lambda()?;
    let scale = DMatrix::from_diagonal(&p.omega.map(|w| w.sqrt().recip()));
    FactorMatrix::new(g.families(), m.transpose() * scale)
}
