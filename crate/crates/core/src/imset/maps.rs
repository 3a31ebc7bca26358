//! The linear maps from family space to imset space, functional and as matrices.

use super::family::{all_families, family_count, family_index, FamilyVector};
use super::imsets::{superset_zeta, CharImset, StdImset};
use super::matrix::{IntMatrix, Label};
use crate::error::{Error, Result};
use crate::graph::NodeSet;

/// Largest `n` for which the dense matrices are materialized.
pub const MATRIX_MAX_NODES: usize = 8;

/// `(φ(u))(S) = Σ_{b∈S} Σ_{A ⊇ S\b} u(A→b)`.
///
/// For each child `b` the inner sums over `A` are a superset zeta transform of
/// `u(· → b)`; the result then collects `W_b(S \ b)` over `b ∈ S`.
pub fn phi_apply(u: &FamilyVector) -> CharImset {
    let n = u.n();
    let size = 1usize << n;
    let mut out = vec![0i64; size];
    let mut w = vec![0i64; size];
    for b in 1..=n {
        w.iter_mut().for_each(|x| *x = 0);
        let others = NodeSet::full(n).without(b);
        for a in others.subsets() {
            let f = crate::graph::Family::new_unchecked(a, b);
            w[a.index()] = u.values()[family_index(n, f)];
        }
        // Bit b stays zero in every stored mask, so the sweep never mixes it in.
        superset_zeta(n, &mut w);
        let bbit = NodeSet::singleton(b).index();
        for s in 1..size {
            if s & bbit != 0 {
                out[s] += w[s & !bbit];
            }
        }
    }
    CharImset::from_dense(n, out).expect("n already validated")
}

/// `ψ(e_{A→b}) = δ_{A∪b} − δ_A`, extended linearly.
pub fn psi_apply(u: &FamilyVector) -> StdImset {
    let entries = u
        .nonzero()
        .flat_map(|(f, x)| [(f.support(), x), (f.parents(), -x)])
        .collect::<Vec<_>>();
    StdImset::new(u.n(), entries).expect("n already validated")
}

fn check_matrix_n(n: usize) -> Result<()> {
    if (1..=MATRIX_MAX_NODES).contains(&n) {
        Ok(())
    } else {
        Err(Error::TooLarge { what: "dense phi/psi matrix", n, max: MATRIX_MAX_NODES })
    }
}

/// `(2^n − 1) × n·2^(n−1)` matrix with `M[S, A→b] = [b∈S]·[S\b ⊆ A]`.
///
/// Rows are nonempty subsets in bitmask order, columns families in index order.
pub fn phi_matrix(n: usize) -> Result<IntMatrix> {
    check_matrix_n(n)?;
    let rows = (1usize << n) - 1;
    let cols = family_count(n);
    let mut m = IntMatrix::zeros(rows, cols);
    let fams: Vec<_> = all_families(n).collect();
    for (j, f) in fams.iter().enumerate() {
        let b = f.child();
        for t in f.parents().subsets() {
            let s = t.with(b);
            m.set(s.index() - 1, j, 1);
        }
        debug_assert_eq!(family_index(n, *f), j);
    }
    let row_labels = (1..=rows).map(|i| Label::Set(NodeSet::from_bits(i as u16))).collect();
    let col_labels = fams.into_iter().map(Label::Family).collect();
    m.with_labels(row_labels, col_labels)
}

/// `2^n × n·2^(n−1)` matrix of ψ; rows are all subsets in bitmask order.
pub fn psi_matrix(n: usize) -> Result<IntMatrix> {
    check_matrix_n(n)?;
    let rows = 1usize << n;
    let cols = family_count(n);
    let mut m = IntMatrix::zeros(rows, cols);
    let fams: Vec<_> = all_families(n).collect();
    for (j, f) in fams.iter().enumerate() {
        m.set(f.support().index(), j, 1);
        m.set(f.parents().index(), j, -1);
    }
    let row_labels = (0..rows).map(|i| Label::Set(NodeSet::from_bits(i as u16))).collect();
    let col_labels = fams.into_iter().map(Label::Family).collect();
    m.with_labels(row_labels, col_labels)
}
