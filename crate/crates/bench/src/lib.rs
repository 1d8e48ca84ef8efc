//! Shared inputs for the benchmarks.

use tiling_forge_core::codes::{golay_binary, golay_ternary};
use tiling_forge_core::lattice::lattice_from_code;
use tiling_forge_core::search::SearchProblem;
use tiling_forge_core::splitting::tiling_to_splitting;
use tiling_forge_core::{AbelianGroup, BallParams, CoefficientSet, Lattice, SplitterSet};

pub fn golay_binary_lattice() -> Lattice {
    lattice_from_code(&golay_binary()).expect("systematic generator")
}

pub fn golay_ternary_lattice() -> Lattice {
    lattice_from_code(&golay_ternary()).expect("systematic generator")
}

/// The splitting of `Z^23 / L` for the binary Golay lattice, 2047 sums.
pub fn golay_binary_splitting() -> SplitterSet {
    let p = BallParams::new(23, 3, 1, 0).expect("valid ball");
    tiling_to_splitting(&p, &golay_binary_lattice()).expect("Golay lattice tiles")
}

/// `B(5,2,2,0)` against `Z_51`, which has no splitting.
pub fn z51_problem() -> SearchProblem {
    SearchProblem::new(
        AbelianGroup::cyclic(51).expect("valid order"),
        CoefficientSet::new(2, 0).expect("valid coefficients"),
        2,
        5,
    )
    .expect("valid problem")
}
