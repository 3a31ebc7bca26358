use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Family;
use crate::imset::{all_families, FamilyVector};

use super::flip::FlipVector;

/// A signed flip combination together with the reduction statistic after each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub terms: Vec<(i64, FlipVector)>,
    /// Statistic of the input followed by its value after every step.
    pub statistic: Vec<u64>,
}

impl Decomposition {
    /// `Σ coefficient · flip`, for checking the result against the input.
    pub fn recompose(&self, n: usize) -> Result<FamilyVector> {
        let mut v = FamilyVector::zeros(n)?;
        for (k, f) in &self.terms {
            v.add_scaled(*k, &f.to_vector(n)?)?;
        }
        Ok(v)
    }
}

/// `S(v) = Σ |F| · [v(F→g) ≠ 0]` over families whose parent set has an element above the child.
pub fn reduction_statistic(v: &FamilyVector) -> u64 {
    v.nonzero()
        .filter(|(f, _)| !f.is_topologically_ordered())
        .map(|(f, _)| f.parents().len() as u64)
        .sum()
}

/// The coordinate the next reduction step eliminates: largest parent-set mask, then smallest child.
fn next_target(v: &FamilyVector) -> Option<(Family, i64)> {
    v.nonzero()
        .filter(|(f, _)| !f.is_topologically_ordered())
        .max_by_key(|(f, _)| (f.parents().bits(), std::cmp::Reverse(f.child())))
}

/// Writes a kernel vector of phi as an integer combination of flip vectors.
///
/// Each step takes a coordinate `F→b` with `c = max F > b`, sets `A = F \ c`, and
/// adds `v(F→b)` times the flip on `(A, b, c)`. That cancels `F→b`, and the only
/// other non-ordered coordinate it can touch is `A→b`, whose parent set is smaller,
/// so the statistic drops. What survives is supported on families with every parent
/// below the child; those columns of phi are independent, so a nonzero survivor
/// proves `v` is outside the kernel.
pub fn decompose_kernel_vector(v: &FamilyVector) -> Result<Decomposition> {
    let n = v.n();
    let mut work = v.clone();
    let mut terms = Vec::new();
    let mut statistic = vec![reduction_statistic(&work)];
    while let Some((f, x)) = next_target(&work) {
        let b = f.child();
        let c = f.parents().max_node().expect("non-ordered family has parents");
        let flip = FlipVector::new(f.parents().without(c), b, c)?;
        work.add_scaled(x, &flip.to_vector(n)?)?;
        let neg = x.checked_neg().ok_or(Error::Overflow)?;
        terms.push((neg, flip));
        let s = reduction_statistic(&work);
        debug_assert!(s < *statistic.last().expect("seeded"));
        statistic.push(s);
    }
    if work.is_zero() {
        Ok(Decomposition { terms, statistic })
    } else {
        Err(Error::NotInKernel { residual: work })
    }
}

/// Families `A→b` with `max A < b`; phi is injective on their span.
pub fn ordered_families(n: usize) -> impl Iterator<Item = Family> {
    all_families(n).filter(|f| f.is_topologically_ordered())
}
