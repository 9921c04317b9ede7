use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::basis::{dimension, mask, SparseOp};
use super::DriveConfig;
use crate::error::{Error, Result};
use crate::linalg::{c, I};

/// Largest array for which a dense drive Hamiltonian is built.
pub const MAX_HAMILTONIAN_ATOMS: usize = 12;

/// Coefficients of a number-conserving-plus-drive spin operator
/// `Σᵢ dᵢ σᵢ⁺σᵢ⁻ + Σ_{i≠j} hᵢⱼ σᵢ⁺σⱼ⁻ + Σᵢ (uᵢ σᵢ⁺ + vᵢ σᵢ⁻)`.
#[derive(Debug, Clone)]
pub(crate) struct SpinTerms {
    pub n: usize,
    pub onsite: Vec<C64>,
    pub hopping: Array2<C64>,
    pub raise: Vec<C64>,
    pub lower: Vec<C64>,
}

impl SpinTerms {
    pub fn sparse(&self) -> SparseOp {
        let n = self.n;
        let d = dimension(n);
        let mut entries = Vec::new();
        for x in 0..d {
            let e: C64 = (0..n)
                .filter(|&i| x & mask(n, i) != 0)
                .map(|i| self.onsite[i])
                .sum();
            if e != C64::new(0.0, 0.0) {
                entries.push((x, x, e));
            }
        }
        for i in 0..n {
            let mi = mask(n, i);
            for j in (0..n).filter(|&j| j != i) {
                let h = self.hopping[[i, j]];
                if h == C64::new(0.0, 0.0) {
                    continue;
                }
                let mj = mask(n, j);
                for x in (0..d).filter(|x| x & mj != 0 && x & mi == 0) {
                    entries.push(((x ^ mj) | mi, x, h));
                }
            }
            for x in 0..d {
                if x & mi == 0 {
                    if self.raise[i] != C64::new(0.0, 0.0) {
                        entries.push((x | mi, x, self.raise[i]));
                    }
                } else if self.lower[i] != C64::new(0.0, 0.0) {
                    entries.push((x ^ mi, x, self.lower[i]));
                }
            }
        }
        SparseOp { dim: d, entries }
    }
}

/// Exchange `𝒢ᵢⱼ = ½√(ΓᵢΓⱼ) sin|φᵢ−φⱼ|` and collective decay
/// `Γᵢⱼ = √(ΓᵢΓⱼ) cos|φᵢ−φⱼ|` (so `Γᵢᵢ = Γᵢ`).
pub fn waveguide_couplings(dc: &DriveConfig) -> (Array2<f64>, Array2<f64>) {
    let cfg = &dc.base;
    let n = cfg.n_atoms();
    let (g, p) = (cfg.gamma(), cfg.phase());
    let exchange = Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j || cfg.spacing_multiple().is_some() {
            0.0
        } else {
            0.5 * (g[i] * g[j]).sqrt() * (p[i] - p[j]).abs().sin()
        }
    });
    let decay = Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            g[i]
        } else if let Some(m) = cfg.spacing_multiple() {
            // cos(|i−j| m π) exactly.
            let s = if ((i as i64 - j as i64).unsigned_abs() * m as u64).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            s * (g[i] * g[j]).sqrt()
        } else {
            (g[i] * g[j]).sqrt() * (p[i] - p[j]).abs().cos()
        }
    });
    (exchange, decay)
}

pub(crate) fn drive_terms(dc: &DriveConfig) -> SpinTerms {
    let cfg = &dc.base;
    let n = cfg.n_atoms();
    let (exchange, _) = waveguide_couplings(dc);
    let rabi = dc.rabi_frequencies();
    SpinTerms {
        n,
        onsite: cfg
            .delta_omega()
            .iter()
            .map(|d| c(-(dc.delta_k - d)))
            .collect(),
        hopping: exchange.mapv(c),
        lower: rabi.iter().map(|o| o.conj()).collect(),
        raise: rabi,
    }
}

/// `H_drive − (i/2) Σᵢⱼ Γᵢⱼ σᵢ⁺σⱼ⁻`.
pub(crate) fn effective_terms(dc: &DriveConfig) -> SpinTerms {
    let mut terms = drive_terms(dc);
    let (_, decay) = waveguide_couplings(dc);
    for i in 0..terms.n {
        terms.onsite[i] -= 0.5 * I * decay[[i, i]];
        for j in (0..terms.n).filter(|&j| j != i) {
            terms.hopping[[i, j]] -= 0.5 * I * decay[[i, j]];
        }
    }
    terms
}

pub(crate) fn check_size(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n > max {
        return Err(Error::DimensionTooLarge {
            n_atoms: n,
            max,
            what,
        });
    }
    Ok(())
}

/// Drive Hamiltonian in the frame rotating at the probe frequency,
/// `−Σᵢ(Δₖ−δωᵢ)σᵢ⁺σᵢ⁻ + Σ_{i≠j}𝒢ᵢⱼσᵢ⁺σⱼ⁻ + Σᵢ(Ωᵢe^{i(φᵢ−φ₁)}σᵢ⁺ + h.c.)`,
/// as a dense Hermitian `2^N × 2^N` matrix.
pub fn build_drive_hamiltonian(dc: &DriveConfig) -> Result<Array2<C64>> {
    check_size(dc.base.n_atoms(), MAX_HAMILTONIAN_ATOMS, "the drive Hamiltonian")?;
    Ok(drive_terms(dc).sparse().to_dense())
}
