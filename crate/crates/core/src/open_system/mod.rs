//! Coherently driven array beyond the single-photon limit: Lindblad master
//! equation, steady state, input–output amplitudes, inelastic flux and
//! spectra, and the analytic dark states.

mod basis;
mod dark;
mod hamiltonian;
mod liouvillian;
mod observables;
mod spectrum;
mod steady;

pub use basis::{basis_index, basis_label, dimension, ground_state, lowering_operator};
pub use dark::{dark_drive_config, dark_state, outer, superradiant_state, DarkState, DARK_TOL};
pub use hamiltonian::{build_drive_hamiltonian, waveguide_couplings, MAX_HAMILTONIAN_ATOMS};
pub use liouvillian::{build_liouvillian, Liouvillian, MAX_DENSE_ATOMS, MAX_LIOUVILLIAN_ATOMS};
pub use observables::{
    coherences, drive_sweep, inelastic_flux, io_amplitudes, output_fluctuation, output_weights,
    solve_drive, Output, SteadyStateResult,
};
pub use spectrum::{
    inelastic_spectrum, inelastic_spectrum_with, InelasticSpectrum, SpectrumOptions,
    MAX_SPECTRUM_ATOMS,
};
pub use steady::{
    steady_state, steady_state_with, DensityOperator, GmresOptions, SteadyStateMethod,
    MAX_LSTSQ_ATOMS, STATE_TOL,
};

use num_complex::Complex64 as C64;

use crate::array_model::ArrayConfig;
use crate::error::{Error, Result};

/// An array probed by a coherent field of amplitude `alpha`
/// (`|α|²` photons per unit time) at detuning `delta_k`.
#[derive(Debug, Clone)]
pub struct DriveConfig {
    pub base: ArrayConfig,
    pub delta_k: f64,
    pub alpha: C64,
}

impl DriveConfig {
    pub fn new(base: ArrayConfig, delta_k: f64, alpha: C64) -> Self {
        Self {
            base,
            delta_k,
            alpha,
        }
    }

    /// From the photon flux `|α|²` and the drive phase.
    pub fn from_intensity(base: ArrayConfig, delta_k: f64, alpha2: f64, phase: f64) -> Result<Self> {
        if !(alpha2.is_finite() && alpha2 >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "drive intensity must be non-negative, got {alpha2}"
            )));
        }
        Ok(Self::new(base, delta_k, C64::from_polar(alpha2.sqrt(), phase)))
    }

    /// `Ωᵢ e^{i(φᵢ−φ₁)}` with `Ωᵢ = √(Γᵢ/2)·α`.
    pub fn rabi_frequencies(&self) -> Vec<C64> {
        let cfg = &self.base;
        let p0 = cfg.phase().first().copied().unwrap_or(0.0);
        cfg.gamma()
            .iter()
            .zip(cfg.phase())
            .map(|(g, p)| {
                let phase = match cfg.spacing_multiple() {
                    // e^{iπk} exactly.
                    Some(_) if ((p - p0) / std::f64::consts::PI).round() as i64 % 2 != 0 => {
                        C64::new(-1.0, 0.0)
                    }
                    Some(_) => C64::new(1.0, 0.0),
                    None => C64::from_polar(1.0, p - p0),
                };
                (g / 2.0).sqrt() * self.alpha * phase
            })
            .collect()
    }
}

#[cfg(test)]
mod tests;
