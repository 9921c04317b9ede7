use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::ArrayConfig;
use crate::linalg::{c, I};

/// Single-excitation effective Hamiltonian after tracing out the waveguide
/// (Markov limit, ω̄ = 0):
///
/// `Hᵢⱼ = δωᵢ δᵢⱼ − (i/2)√(ΓᵢΓⱼ) e^{i|φᵢ−φⱼ|}`.
///
/// The matrix is complex symmetric, not Hermitian.
pub fn build_effective_hamiltonian(cfg: &ArrayConfig) -> Array2<C64> {
    let n = cfg.n_atoms();
    let (dw, gamma, phase) = (cfg.delta_omega(), cfg.gamma(), cfg.phase());
    Array2::from_shape_fn((n, n), |(i, j)| {
        let coupling = -0.5 * I * (gamma[i] * gamma[j]).sqrt()
            * C64::from_polar(1.0, (phase[i] - phase[j]).abs());
        if i == j {
            c(dw[i]) + coupling
        } else {
            coupling
        }
    })
}
