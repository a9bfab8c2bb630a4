//! Finite bounded lattices, their t-norms, L-subsets and lattice-valued
//! equalities.

mod fuzzy;
mod order;
mod tnorm;
mod vague;

pub use fuzzy::{
    check_lattice_fuzzy_property, check_lattice_fuzzy_subnorm, lattice_fuzzy_universe,
    sweep_lattice_fuzzy_implication, LSubset, LatticeFuzzyCase,
};
pub use order::{FiniteLattice, LatticeInterval};
pub use tnorm::{check_lattice_tnorm, enumerate_lattice_tnorms, LatticeTNorm};
pub use vague::{
    check_lattice_vague_structures, crisp_lattice_equality, induce_lattice_vague_tnorm,
    lattice_vague_universe, sweep_lattice_vague_cancellation, LatticeDegrees, LatticeVagueCase,
    MAX_VAGUE_LATTICE,
};
