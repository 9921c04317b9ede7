use ndarray::Array1;
use num_complex::Complex64 as C64;

use super::basis::{basis_index, dimension, mask};
use super::hamiltonian::build_drive_hamiltonian;
use super::liouvillian::build_liouvillian;
use super::DriveConfig;
use crate::array_model::ArrayConfig;
use crate::error::{Error, Result};
use crate::linalg::c;

/// Residual tolerance for the analytic dark states.
pub const DARK_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct DarkState {
    pub n_atoms: usize,
    /// Normalised amplitudes over the 2^N product basis.
    pub amplitudes: Array1<C64>,
    /// The normalisation constant dividing the unnormalised vector.
    pub normalization: f64,
    /// `‖H_drive |𝒟⟩‖`.
    pub hamiltonian_residual: f64,
    /// Max entry of `L(|𝒟⟩⟨𝒟|)`.
    pub liouvillian_residual: f64,
}

/// The drive setting of the analytic dark states: an N-atom ladder with
/// spacing `delta`, unit decay, π phase steps, probe at `Δₖ = 0` and real
/// Rabi frequency `omega = √(Γ/2)·α`.
pub fn dark_drive_config(n_atoms: usize, delta: f64, omega: f64) -> Result<DriveConfig> {
    let base = ArrayConfig::ladder(n_atoms, delta)?;
    Ok(DriveConfig::new(base, 0.0, c(omega / 0.5f64.sqrt())))
}

/// Closed-form stationary dark state of the driven ladder for N = 2 or 4.
///
/// N = 2: `[Δ|gg⟩ + 2Ω(|eg⟩ + |ge⟩)] / √(8Ω² + Δ²)`.
/// N = 4: `[3Δ²|gggg⟩ + 2ΔΩ(|eggg⟩ + |ggge⟩ − 3|gegg⟩ − 3|ggeg⟩)
/// − 4Ω²(|eegg⟩ + |egeg⟩ + |gege⟩ + |ggee⟩)] / √((8Ω²+Δ²)(8Ω²+9Δ²))`.
pub fn dark_state(n_atoms: usize, delta: f64, omega: f64) -> Result<DarkState> {
    let terms: Vec<(&str, f64)> = match n_atoms {
        2 => vec![("gg", delta), ("eg", 2.0 * omega), ("ge", 2.0 * omega)],
        4 => {
            let (dd, dw, ww) = (delta * delta, delta * omega, omega * omega);
            vec![
                ("gggg", 3.0 * dd),
                ("eggg", 2.0 * dw),
                ("ggge", 2.0 * dw),
                ("gegg", -6.0 * dw),
                ("ggeg", -6.0 * dw),
                ("eegg", -4.0 * ww),
                ("egeg", -4.0 * ww),
                ("gege", -4.0 * ww),
                ("ggee", -4.0 * ww),
            ]
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "analytic dark state for N = {n_atoms} (only N = 2 and N = 4)"
            )))
        }
    };
    let (w2, d2) = (omega * omega, delta * delta);
    let normalization = match n_atoms {
        2 => (8.0 * w2 + d2).sqrt(),
        _ => ((8.0 * w2 + d2) * (8.0 * w2 + 9.0 * d2)).sqrt(),
    };
    if !(normalization > 0.0) {
        return Err(Error::InvalidConfig(
            "dark state needs a nonzero ladder spacing or drive".into(),
        ));
    }
    let mut amplitudes = Array1::zeros(dimension(n_atoms));
    for (label, v) in terms {
        amplitudes[basis_index(label).expect("valid label")] = c(v / normalization);
    }

    let dc = dark_drive_config(n_atoms, delta, omega)?;
    let h = build_drive_hamiltonian(&dc)?;
    let hamiltonian_residual = h
        .dot(&amplitudes)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let proj = outer(&amplitudes);
    let liouvillian_residual = build_liouvillian(&dc)?
        .apply(&proj)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    for residual in [hamiltonian_residual, liouvillian_residual] {
        if residual > DARK_TOL {
            return Err(Error::SteadyStateResidual {
                residual,
                tol: DARK_TOL,
            });
        }
    }
    Ok(DarkState {
        n_atoms,
        amplitudes,
        normalization,
        hamiltonian_residual,
        liouvillian_residual,
    })
}

/// `|ψ⟩⟨ψ|`.
pub fn outer(psi: &Array1<C64>) -> ndarray::Array2<C64> {
    let d = psi.len();
    ndarray::Array2::from_shape_fn((d, d), |(a, b)| psi[a] * psi[b].conj())
}

/// Single-excitation superradiant state `Σⱼ sⱼ σⱼ⁺|G⟩/√N` of an array with
/// spacing `nπ`, `sⱼ = (−1)^{(j−1)n}`.
pub fn superradiant_state(n_atoms: usize, spacing_multiple: u32) -> Array1<C64> {
    let mut v = Array1::zeros(dimension(n_atoms));
    let norm = 1.0 / (n_atoms as f64).sqrt();
    for j in 0..n_atoms {
        let s = if (j as u64 * spacing_multiple as u64).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        v[mask(n_atoms, j)] = c(s * norm);
    }
    v
}
