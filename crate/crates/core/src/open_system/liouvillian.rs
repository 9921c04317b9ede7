use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::basis::{dimension, mask, SparseOp};
use super::hamiltonian::{check_size, effective_terms, waveguide_couplings};
use super::DriveConfig;
use crate::error::Result;
use crate::linalg::I;

/// Largest array the master equation is set up for.
pub const MAX_LIOUVILLIAN_ATOMS: usize = 8;
/// Largest array for which the superoperator is stored densely.
pub const MAX_DENSE_ATOMS: usize = 6;

/// Generator of the master equation
/// `Lρ = −i(H_eff ρ − ρ H_eff†) + Σᵢⱼ Γᵢⱼ σⱼ⁻ ρ σᵢ⁺`,
/// with `H_eff = H_drive − (i/2)Σᵢⱼ Γᵢⱼ σᵢ⁺σⱼ⁻`.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    n: usize,
    h_eff: SparseOp,
    rates: Array2<f64>,
}

pub fn build_liouvillian(dc: &DriveConfig) -> Result<Liouvillian> {
    let n = dc.base.n_atoms();
    check_size(n, MAX_LIOUVILLIAN_ATOMS, "the Liouvillian")?;
    let (_, rates) = waveguide_couplings(dc);
    Ok(Liouvillian {
        n,
        h_eff: effective_terms(dc).sparse(),
        rates,
    })
}

impl Liouvillian {
    pub fn n_atoms(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension 2^N.
    pub fn dimension(&self) -> usize {
        dimension(self.n)
    }

    /// Collective decay matrix Γᵢⱼ.
    pub fn rates(&self) -> &Array2<f64> {
        &self.rates
    }

    pub fn effective_hamiltonian(&self) -> Array2<C64> {
        self.h_eff.to_dense()
    }

    /// `Lρ` without forming the superoperator.
    pub fn apply(&self, rho: &Array2<C64>) -> Array2<C64> {
        let d = self.dimension();
        let mut out = Array2::<C64>::zeros((d, d));
        // −i H ρ and +i ρ H†.
        for &(r, col, h) in &self.h_eff.entries {
            let hl = -I * h;
            let hr = I * h.conj();
            for b in 0..d {
                out[[r, b]] += hl * rho[[col, b]];
            }
            for a in 0..d {
                out[[a, r]] += hr * rho[[a, col]];
            }
        }
        // Σᵢⱼ Γᵢⱼ σⱼ ρ σᵢ⁺: out[y, b] += Γᵢⱼ ρ[y | mⱼ, b | mᵢ].
        for i in 0..self.n {
            let mi = mask(self.n, i);
            for j in 0..self.n {
                let g = self.rates[[i, j]];
                if g == 0.0 {
                    continue;
                }
                let mj = mask(self.n, j);
                for y in (0..d).filter(|y| y & mj == 0) {
                    for b in (0..d).filter(|b| b & mi == 0) {
                        out[[y, b]] += g * rho[[y | mj, b | mi]];
                    }
                }
            }
        }
        out
    }

    /// Superoperator acting on row-major `vec(ρ)`, index `a·d + b` for
    /// `ρ[a, b]`, using `vec(AXB) = (A ⊗ Bᵀ) vec(X)`.
    pub fn to_dense(&self) -> Result<Array2<C64>> {
        check_size(self.n, MAX_DENSE_ATOMS, "a dense Liouvillian")?;
        let d = self.dimension();
        let mut l = Array2::<C64>::zeros((d * d, d * d));
        for &(r, col, h) in &self.h_eff.entries {
            for b in 0..d {
                // −i (H ⊗ I)
                l[[r * d + b, col * d + b]] += -I * h;
                // +i (I ⊗ H*)
                l[[b * d + r, b * d + col]] += I * h.conj();
            }
        }
        for i in 0..self.n {
            let mi = mask(self.n, i);
            for j in 0..self.n {
                let g = self.rates[[i, j]];
                if g == 0.0 {
                    continue;
                }
                let mj = mask(self.n, j);
                // Γᵢⱼ σⱼ ⊗ σᵢ
                for y in (0..d).filter(|y| y & mj == 0) {
                    for b in (0..d).filter(|b| b & mi == 0) {
                        l[[y * d + b, (y | mj) * d + (b | mi)]] += g;
                    }
                }
            }
        }
        Ok(l)
    }
}
