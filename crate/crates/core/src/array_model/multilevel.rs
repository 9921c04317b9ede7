use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::CollectiveDecomposition;
use crate::error::Result;
use crate::linalg::{c, eigenvalues, I};

/// A driven (N+1)-level atom: excited state |N⟩ decaying into the waveguide
/// at `excited_decay`, coupled to N−1 metastable states by control fields.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLevelModel {
    pub excited_decay: f64,
    pub control_detunings: Vec<f64>,
    pub rabi_frequencies: Vec<C64>,
}

impl MultiLevelModel {
    /// Non-Hermitian single-excitation Hamiltonian in the basis
    /// `(|N⟩, |1⟩, …, |N−1⟩)`, with the excited-state energy as reference.
    pub fn hamiltonian(&self) -> Array2<C64> {
        let m = self.control_detunings.len() + 1;
        let mut h = Array2::zeros((m, m));
        h[[0, 0]] = -0.5 * I * self.excited_decay;
        for (k, (&det, &omega)) in self
            .control_detunings
            .iter()
            .zip(&self.rabi_frequencies)
            .enumerate()
        {
            h[[k + 1, k + 1]] = c(det);
            h[[0, k + 1]] = omega;
            h[[k + 1, 0]] = omega.conj();
        }
        h
    }

    pub fn spectrum(&self) -> Result<Vec<C64>> {
        eigenvalues(&self.hamiltonian())
    }
}

/// Identify the array's collective modes with a driven multilevel atom:
/// `Γ_N0 = NΓ`, `Δᵢ⁽ᶜ⁾ = Δᵢ`, `Ωᵢ = gᵢ`.
pub fn map_to_multilevel(dec: &CollectiveDecomposition) -> MultiLevelModel {
    MultiLevelModel {
        excited_decay: dec.superradiant_decay,
        control_detunings: dec.effective_detunings.clone(),
        rabi_frequencies: dec.effective_couplings.clone(),
    }
}
