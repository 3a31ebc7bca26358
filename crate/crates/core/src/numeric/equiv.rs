use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::factor::{random_factor, FactorMatrix, RANK_TOLERANCE};
use super::solver::{orth_feasibility, OrthSolverConfig};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Printed with every inequivalence verdict.
pub const HEURISTIC_NOTE: &str =
    "heuristic: the solver is non-convex, so a residual above tau is evidence, not a proof, of inequivalence";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    EvidenceEquivalent,
    EvidenceInequivalent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionResiduals {
    pub g_to_h: Vec<f64>,
    pub h_to_g: Vec<f64>,
}

/// `{"verdict", "tau", "trials", "residuals": {"g_to_h", "h_to_g"}, "seed"}` plus a note on inequivalence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivVerdict {
    pub verdict: Verdict,
    pub tau: f64,
    pub trials: usize,
    pub residuals: DirectionResiduals,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl EquivVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::EvidenceEquivalent
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.g_to_h.iter().chain(&self.residuals.h_to_g).copied().fold(0.0, f64::max)
    }

    pub fn min_residual(&self) -> f64 {
        self.residuals.g_to_h.iter().chain(&self.residuals.h_to_g).copied().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivOptions {
    pub trials: usize,
    pub jobs: usize,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions { trials: 5, jobs: 1 }
    }
}

/// Sample for trial seed `seed`, redrawn on a rank-deficient draw.
fn trial_factor(g: &DirectedGraph, seed: u64) -> FactorMatrix {
    (0u64..)
        .map(|attempt| random_factor(g, seed.wrapping_add(attempt << 32)))
        .find(|q| q.scaled_determinant() >= RANK_TOLERANCE)
        .expect("a full-rank draw exists")
}

fn run_trial(src: &DirectedGraph, dst: &DirectedGraph, cfg: &OrthSolverConfig, t: usize) -> Result<f64> {
    let seed = cfg.seed.wrapping_add(t as u64);
    let q = trial_factor(src, seed);
    let trial_cfg = OrthSolverConfig { seed, ..*cfg };
    Ok(orth_feasibility(&q, dst, &trial_cfg)?.residual)
}

/// Numeric evidence for covariance equivalence of `g` and `h`.
///
/// Trial `t` in each direction samples a factor of the source graph with seed
/// `cfg.seed + t` and asks whether an orthogonal transform gives it the target's
/// sparsity. Both directions must succeed in every trial.
pub fn covariance_equiv_numeric(
    g: &DirectedGraph,
    h: &DirectedGraph,
    cfg: &OrthSolverConfig,
    opts: &EquivOptions,
) -> Result<EquivVerdict> {
    if g.n() != h.n() {
        return Err(Error::NodeCountMismatch(g.n(), h.n()));
    }
    cfg.validate()?;
    if opts.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let jobs: Vec<(bool, usize)> = [false, true]
        .into_iter()
        .flat_map(|rev| (0..opts.trials).map(move |t| (rev, t)))
        .collect();
    let one = |&(rev, t): &(bool, usize)| if rev { run_trial(h, g, cfg, t) } else { run_trial(g, h, cfg, t) };
    let results: Vec<f64> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(one).collect::<Result<_>>())?
    } else {
        jobs.iter().map(one).collect::<Result<_>>()?
    };
    let (g_to_h, h_to_g) = results.split_at(opts.trials);
    let ok = results.iter().all(|&r| r < cfg.tau);
    Ok(EquivVerdict {
        verdict: if ok { Verdict::EvidenceEquivalent } else { Verdict::EvidenceInequivalent },
        tau: cfg.tau,
        trials: opts.trials,
        residuals: DirectionResiduals { g_to_h: g_to_h.to_vec(), h_to_g: h_to_g.to_vec() },
        seed: cfg.seed,
        note: (!ok).then(|| HEURISTIC_NOTE.to_string()),
    })
}
