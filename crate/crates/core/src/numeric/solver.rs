//! Search over the orthogonal group for `U` making `Q0·U` fit a target sparsity.
//!
//! `U = G_1 ⋯ G_K` is a product of plane rotations, one per pair `i < j` in
//! lexicographic order, each with its own angle. A trailing diagonal sign matrix
//! would complete the parameterization of `O(n)`, but flipping column signs never
//! changes which entries vanish, so it is fixed to the identity.
//!
//! The objective is the sum of squares of the entries that the target forbids.
//! It is a nonlinear least-squares problem in the angles and is minimized by a
//! Levenberg–Marquardt iteration that only accepts steps lowering the objective.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::factor::{FactorMatrix, RANK_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthSolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tol: f64,
    pub tau: f64,
    pub seed: u64,
}

impl Default for OrthSolverConfig {
    fn default() -> Self {
        OrthSolverConfig { restarts: 50, max_iters: 2000, step_tol: 1e-12, tau: 1e-8, seed: 0 }
    }
}

impl OrthSolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParameter("restarts and max_iters must be positive".into()));
        }
        if !(self.step_tol > 0.0 && self.tau > 0.0) {
            return Err(Error::InvalidParameter("step_tol and tau must be positive".into()));
        }
        Ok(())
    }
}

/// One feasibility problem: a fixed factor and the positions the target forbids.
#[derive(Clone, Debug)]
pub struct OrthProblem {
    n: usize,
    q0: DMatrix<f64>,
    /// Zero-based `(row, column)` positions that must vanish.
    forbidden: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize)>,
    scale: f64,
}

impl OrthProblem {
    pub fn new(q0: &FactorMatrix, target: &DirectedGraph) -> Result<Self> {
        let n = q0.n();
        if target.n() != n {
            return Err(Error::NodeCountMismatch(n, target.n()));
        }
        if q0.scaled_determinant() < RANK_TOLERANCE {
            return Err(Error::RankDeficient);
        }
        let forbidden = (0..n)
            .flat_map(|j| (0..n).map(move |i| (i, j)))
            .filter(|&(i, j)| i != j && !target.has_edge(i + 1, j + 1))
            .collect();
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Ok(OrthProblem { n, q0: q0.data().clone(), forbidden, pairs, scale: q0.data().norm() })
    }

    pub fn angle_count(&self) -> usize {
        self.pairs.len()
    }

    /// `G_1 ⋯ G_K` for the given angles.
    pub fn rotation(&self, angles: &[f64]) -> DMatrix<f64> {
        let mut u = DMatrix::identity(self.n, self.n);
        for (&(i, j), &t) in self.pairs.iter().zip(angles) {
            rotate_columns(&mut u, i, j, t.cos(), t.sin());
        }
        u
    }

    pub fn residuals(&self, angles: &[f64]) -> DVector<f64> {
        let mut m = self.q0.clone();
        for (&(i, j), &t) in self.pairs.iter().zip(angles) {
            rotate_columns(&mut m, i, j, t.cos(), t.sin());
        }
        DVector::from_iterator(self.forbidden.len(), self.forbidden.iter().map(|&(r, c)| m[(r, c)]))
    }

    pub fn objective(&self, angles: &[f64]) -> f64 {
        self.residuals(angles).norm_squared()
    }

    /// `√f / ‖Q0‖_F`.
    pub fn scaled_residual(&self, objective: f64) -> f64 {
        objective.sqrt() / self.scale
    }

    /// Residual vector and its Jacobian in the angles.
    ///
    /// With `P_k = Q0·G_1⋯G_{k−1}` and `S_k = G_{k+1}⋯G_K`, the derivative in
    /// angle `k` is `P_k·G_k'·S_k`; `G_k'` has only two nonzero columns, so each
    /// entry costs two products.
    pub fn jacobian(&self, angles: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let k = self.pairs.len();
        let (cs, sn): (Vec<f64>, Vec<f64>) = angles.iter().map(|t| (t.cos(), t.sin())).unzip();
        let mut suffix = vec![DMatrix::identity(self.n, self.n); k + 1];
        for idx in (0..k).rev() {
            let (i, j) = self.pairs[idx];
            let mut s = suffix[idx + 1].clone();
            rotate_rows(&mut s, i, j, cs[idx], sn[idx]);
            suffix[idx] = s;
        }
        let mut jac = DMatrix::zeros(self.forbidden.len(), k);
        let mut prefix = self.q0.clone();
        for idx in 0..k {
            let (i, j) = self.pairs[idx];
            let (c, s) = (cs[idx], sn[idx]);
            let a = -s * prefix.column(i) + c * prefix.column(j);
            let b = -c * prefix.column(i) - s * prefix.column(j);
            let after = &suffix[idx + 1];
            for (row, &(r, col)) in self.forbidden.iter().enumerate() {
                jac[(row, idx)] = a[r] * after[(i, col)] + b[r] * after[(j, col)];
            }
            rotate_columns(&mut prefix, i, j, c, s);
        }
        let res = DVector::from_iterator(
            self.forbidden.len(),
            self.forbidden.iter().map(|&(r, col)| prefix[(r, col)]),
        );
        (res, jac)
    }

    /// Analytic gradient `2 Jᵀ r` of the objective.
    pub fn gradient(&self, angles: &[f64]) -> Vec<f64> {
        let (r, j) = self.jacobian(angles);
        (j.transpose() * r * 2.0).iter().copied().collect()
    }

    fn minimize(&self, start: Vec<f64>, cfg: &OrthSolverConfig) -> Descent {
        let k = self.pairs.len();
        let mut x = start;
        let mut f = self.objective(&x);
        let mut trace = vec![f];
        let mut mu = 1e-3;
        let mut iters = 0;
        let good_enough = (cfg.tau * 1e-3 * self.scale).powi(2);
        while iters < cfg.max_iters && f > good_enough && k > 0 {
            iters += 1;
            let (r, jac) = self.jacobian(&x);
            let jt = jac.transpose();
            let a = &jt * &jac;
            let g = &jt * r;
            let mut damped = a.clone();
            for d in 0..k {
                damped[(d, d)] += mu * (a[(d, d)] + 1e-12);
            }
            let step = match damped.cholesky() {
                Some(ch) => ch.solve(&(-&g)),
                None => {
                    mu *= 4.0;
                    continue;
                }
            };
            if step.norm() < cfg.step_tol {
                break;
            }
            let cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let fc = self.objective(&cand);
            if fc < f {
                x = cand;
                f = fc;
                trace.push(f);
                mu = (mu / 3.0).max(1e-15);
            } else {
                mu *= 4.0;
                if mu > 1e16 {
                    break;
                }
            }
        }
        Descent { angles: x, objective: f, trace, iterations: iters }
    }
}

struct Descent {
    angles: Vec<f64>,
    objective: f64,
    trace: Vec<f64>,
    iterations: usize,
}

fn rotate_columns(m: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64) {
    for r in 0..m.nrows() {
        let (a, b) = (m[(r, i)], m[(r, j)]);
        m[(r, i)] = c * a + s * b;
        m[(r, j)] = -s * a + c * b;
    }
}

fn rotate_rows(m: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64) {
    for col in 0..m.ncols() {
        let (a, b) = (m[(i, col)], m[(j, col)]);
        m[(i, col)] = c * a - s * b;
        m[(j, col)] = s * a + c * b;
    }
}

#[derive(Clone, Debug)]
pub struct OrthResult {
    /// `√f / ‖Q0‖_F` at the best point found.
    pub residual: f64,
    pub u: DMatrix<f64>,
    pub angles: Vec<f64>,
    /// Accepted objective values of the winning restart, non-increasing.
    pub trace: Vec<f64>,
    pub restarts_run: usize,
    pub iterations: usize,
}

/// Best orthogonal `U` over the configured restarts.
///
/// Restart 0 starts from the identity; the others from angles uniform on
/// `[−π, π)`, restart `r` drawing from stream `r` of the seeded generator.
/// Restarts stop once one reaches a residual below `tau`.
pub fn orth_feasibility(q0: &FactorMatrix, target: &DirectedGraph, cfg: &OrthSolverConfig) -> Result<OrthResult> {
    cfg.validate()?;
    let problem = OrthProblem::new(q0, target)?;
    let k = problem.angle_count();
    let mut best: Option<Descent> = None;
    let mut restarts_run = 0;
    let mut iterations = 0;
    for r in 0..cfg.restarts {
        let start = if r == 0 {
            vec![0.0; k]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            (0..k).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
        };
        let d = problem.minimize(start, cfg);
        restarts_run += 1;
        iterations += d.iterations;
        if best.as_ref().is_none_or(|b| d.objective < b.objective) {
            best = Some(d);
        }
        if problem.scaled_residual(best.as_ref().expect("set above").objective) < cfg.tau {
            break;
        }
    }
    let best = best.expect("at least one restart");
    Ok(OrthResult {
        residual: problem.scaled_residual(best.objective),
        u: problem.rotation(&best.angles),
        angles: best.angles,
        trace: best.trace,
        restarts_run,
        iterations,
    })
}
