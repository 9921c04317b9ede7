//! Single-photon transmission and reflection of the array: a transfer-matrix
//! solver for arbitrary decay rates and phases, and the rational closed form
//! valid for `nπ` spacing.

mod closed_form;
mod sweep;
mod transfer;

pub use closed_form::{closed_form, closed_form_emitters};
pub use sweep::{count_reflection_dips, sweep, SpectrumSweep};
pub use transfer::{scatter, single_site_matrices, transfer_states, TransferState};

use num_complex::Complex64 as C64;

/// Distance from an atomic frequency below which a probe counts as exactly
/// resonant.
pub const RESONANCE_TOL: f64 = 1e-12;

/// Amplitudes at one probe detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub delta_k: f64,
    pub t: C64,
    pub r: C64,
    pub transmittance: f64,
    pub reflectance: f64,
}

impl ScatteringResult {
    pub fn new(delta_k: f64, t: C64, r: C64) -> Self {
        Self {
            delta_k,
            t,
            r,
            transmittance: t.norm_sqr(),
            reflectance: r.norm_sqr(),
        }
    }
}
