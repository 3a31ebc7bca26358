//! Integer lattices over family coordinates, kernel decomposition, and imset fibers.

mod decompose;
mod fiber;
mod flip;
mod hnf;

pub use decompose::{decompose_kernel_vector, ordered_families, reduction_statistic, Decomposition};
pub use fiber::{
    collapse_isomorphic, cycle_generator_exponents, fiber_enumerate, fiber_enumerate_with,
    fiber_move_components, Fiber, FiberJson, FiberOptions, MoveComponents, MoveSet,
    DEFAULT_CANDIDATE_LIMIT, FIBER_MAX_NODES,
};
pub use flip::{flip_vectors, FlipVector};
pub use hnf::{hermite_normal_form, integer_kernel_basis, lattices_equal, LatticeBasis};

use serde::Serialize;

use crate::error::Result;
use crate::imset::{family_count, phi_matrix};

/// Outcome of comparing the flip lattice with the integer kernel of phi.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub flip_count: usize,
    pub flip_rank: usize,
    pub kernel_rank: usize,
    pub expected_rank: usize,
    pub equal: bool,
}

pub fn verify_kernel(n: usize) -> Result<KernelReport> {
    let flips = flip_vectors(n)?;
    let gens: Vec<Vec<i64>> =
        flips.iter().map(|f| f.to_vector(n).map(|v| v.values().to_vec())).collect::<Result<_>>()?;
    let flip_lattice = LatticeBasis::span_families(n, &gens)?;
    let kernel = integer_kernel_basis(&phi_matrix(n)?)?;
    Ok(KernelReport {
        n,
        flip_count: flips.len(),
        flip_rank: flip_lattice.rank(),
        kernel_rank: kernel.rank(),
        expected_rank: family_count(n) - ((1 << n) - 1),
        equal: lattices_equal(&flip_lattice, &kernel)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_identity_small() {
        for (n, rank) in [(2, 1), (3, 5), (4, 17), (5, 49)] {
            let r = verify_kernel(n).unwrap();
            assert!(r.equal, "n = {n}");
            assert_eq!((r.kernel_rank, r.flip_rank, r.expected_rank), (rank, rank, rank));
        }
    }

    #[test]
    fn dropping_a_generator_changes_the_lattice() {
        let n = 3;
        let gens: Vec<Vec<i64>> =
            flip_vectors(n).unwrap().iter().map(|f| f.to_vector(n).unwrap().values().to_vec()).collect();
        let full = LatticeBasis::span_families(n, &gens).unwrap();
        let kernel = integer_kernel_basis(&phi_matrix(n).unwrap()).unwrap();
        assert!(lattices_equal(&full, &kernel).unwrap());
        // The six generators at n = 3 satisfy one relation with all coefficients ±1,
        // so any five of them still span the kernel; removing two loses rank.
        for skip in 0..gens.len() {
            let mut rest = gens.clone();
            rest.remove(skip);
            let five = LatticeBasis::span_families(n, &rest).unwrap();
            assert!(lattices_equal(&five, &kernel).unwrap(), "dropping generator {skip}");
            rest.remove(0);
            let four = LatticeBasis::span_families(n, &rest).unwrap();
            assert_eq!(four.rank(), 4);
            assert!(!lattices_equal(&four, &kernel).unwrap());
        }
        let doubled: Vec<Vec<i64>> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| if i == 0 { g.iter().map(|x| 2 * x).collect() } else { g.clone() })
            .collect();
        let sub = LatticeBasis::span_families(n, &doubled[..5]).unwrap();
        assert_eq!(sub.rank(), 5);
        assert!(!lattices_equal(&sub, &kernel).unwrap());
        let mut shuffled = gens.clone();
        shuffled.reverse();
        assert!(lattices_equal(&LatticeBasis::span_families(n, &shuffled).unwrap(), &full).unwrap());
    }
}
