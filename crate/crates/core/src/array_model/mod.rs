//! The atom array, its Markovian effective Hamiltonian and the collective-mode
//! picture that maps it onto a driven multilevel atom.

mod collective;
mod config;
mod degenerate;
mod hamiltonian;
mod multilevel;

pub use collective::{
    collective_transform, coupling_strengths, decompose, decompose_with_tolerance,
    CollectiveDecomposition, DEGENERACY_TOL,
};
pub use config::{center_detunings, ArrayConfig, SPACING_TOL};
pub use degenerate::{reduce_degenerate, DegenerateReduction, Emitter, FrequencyGroup};
pub use hamiltonian::build_effective_hamiltonian;
pub use multilevel::{map_to_multilevel, MultiLevelModel};
