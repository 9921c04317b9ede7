use ndarray::{arr2, Array2};
use num_complex::Complex64 as C64;

use super::{ScatteringResult, RESONANCE_TOL};
use crate::array_model::ArrayConfig;
use crate::error::{Error, Result};
use crate::linalg::{c, I};

/// Amplitudes `(tᵢ, rᵢ)` of the right- and left-moving waves between atoms
/// `i` and `i+1`; index 0 is the input side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferState {
    pub t_i: C64,
    pub r_i: C64,
}

/// `Tᵢ` and `T_φᵢ` for atom `site` (0-based) at probe detuning `delta_k`.
///
/// `Tᵢ = [[2−αᵢ, 1−αᵢ], [αᵢ−1, αᵢ]]` with
/// `αᵢ = (Δₖ − δωᵢ + iΓᵢ/2)/(Δₖ − δωᵢ)` and `T_φᵢ = diag(e^{iφᵢ}, e^{−iφᵢ})`.
pub fn single_site_matrices(
    cfg: &ArrayConfig,
    site: usize,
    delta_k: f64,
) -> Result<(Array2<C64>, Array2<C64>)> {
    let x = delta_k - cfg.delta_omega()[site];
    if x.abs() < RESONANCE_TOL {
        return Err(Error::OnAtomResonance { site });
    }
    let alpha = (c(x) + 0.5 * I * cfg.gamma()[site]) / x;
    let one = c(1.0);
    let t = arr2(&[[2.0 * one - alpha, one - alpha], [alpha - one, alpha]]);
    let p = cfg.phase()[site];
    let tp = arr2(&[
        [C64::from_polar(1.0, p), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::from_polar(1.0, -p)],
    ]);
    Ok((t, tp))
}

type M2 = [[C64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `T_φ⁻¹ K T_φ` with `K = [[−1, −1], [1, 1]]`, so that
/// `T_φ⁻¹ Tᵢ T_φ = I + cᵢ·kφ` with `cᵢ = αᵢ − 1`.
fn rotated_k(phase_factor: C64) -> M2 {
    let one = c(1.0);
    [[-one, -phase_factor.conj()], [phase_factor, one]]
}

/// `e^{2i(φᵢ−φ₁)}` per atom; exactly 1 under `nπ` spacing.
fn phase_factors(cfg: &ArrayConfig) -> Vec<C64> {
    if cfg.spacing_multiple().is_some() {
        return vec![c(1.0); cfg.n_atoms()];
    }
    let p0 = cfg.phase().first().copied().unwrap_or(0.0);
    cfg.phase()
        .iter()
        .map(|p| C64::from_polar(1.0, 2.0 * (p - p0)))
        .collect()
}

/// Exact transmission and reflection through the full transfer-matrix
/// product, site 1 applied first.
///
/// On an exact atomic resonance `αᵢ` diverges; the product is then taken as a
/// polynomial in the residual detuning ε of the resonant atoms and the
/// amplitudes are read off from its limit ε → 0.
pub fn scatter(cfg: &ArrayConfig, delta_k: f64) -> Result<ScatteringResult> {
    let zero = C64::new(0.0, 0.0);
    let id: M2 = [[c(1.0), zero], [zero, c(1.0)]];
    let phases = phase_factors(cfg);

    // coeffs[j] multiplies ε^j.
    let mut coeffs: Vec<M2> = vec![id];
    for site in 0..cfg.n_atoms() {
        let x = delta_k - cfg.delta_omega()[site];
        let k = rotated_k(phases[site]);
        let half = 0.5 * I * cfg.gamma()[site];
        if x.abs() < RESONANCE_TOL {
            // ε·Tᵢ = ε·I + (iΓᵢ/2)·K_φ.
            let a0: M2 = k.map(|row| row.map(|z| z * half));
            let mut next = vec![[[zero; 2]; 2]; coeffs.len() + 1];
            for (j, cj) in coeffs.iter().enumerate() {
                let lo = mul(&a0, cj);
                for p in 0..2 {
                    for q in 0..2 {
                        next[j][p][q] += lo[p][q];
                        next[j + 1][p][q] += cj[p][q];
                    }
                }
            }
            coeffs = next;
        } else {
            let ci = half / x;
            let t: M2 = [
                [id[0][0] + ci * k[0][0], ci * k[0][1]],
                [ci * k[1][0], id[1][1] + ci * k[1][1]],
            ];
            for cj in coeffs.iter_mut() {
                *cj = mul(&t, cj);
            }
        }
    }

    let m = coeffs.len() - 1;
    // det M = 1, so t = M₁₁ + M₁₂r = 1/M₂₂; the latter avoids cancellation
    // when transmission is small.
    let (t, r) = if m == 0 {
        let mat = coeffs[0];
        (1.0 / mat[1][1], -mat[1][0] / mat[1][1])
    } else {
        let scale = coeffs
            .iter()
            .flat_map(|cj| cj.iter().flatten())
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let order = coeffs
            .iter()
            .position(|cj| cj[1][1].norm() > 1e-10 * scale)
            .unwrap_or(m);
        let r = -coeffs[order][1][0] / coeffs[order][1][1];
        // t = 1/M₂₂ = ε^m / M̃₂₂(ε).
        let t = if order < m {
            zero
        } else {
            1.0 / coeffs[m][1][1]
        };
        (t, r)
    };
    Ok(ScatteringResult::new(delta_k, t, r))
}

/// The piecewise amplitudes `(tᵢ, rᵢ)` for `i = 0..=N`, with `t₀ = 1`,
/// `r₀ = r` and `r_N = 0`.
pub fn transfer_states(cfg: &ArrayConfig, delta_k: f64) -> Result<Vec<TransferState>> {
    let res = scatter(cfg, delta_k)?;
    if let Some(site) = cfg
        .delta_omega()
        .iter()
        .position(|d| (delta_k - d).abs() < RESONANCE_TOL)
    {
        return Err(Error::OnAtomResonance { site });
    }
    let phases = phase_factors(cfg);
    let mut state = [c(1.0), res.r];
    let mut out = Vec::with_capacity(cfg.n_atoms() + 1);
    out.push(TransferState {
        t_i: state[0],
        r_i: state[1],
    });
    for site in 0..cfg.n_atoms() {
        let x = delta_k - cfg.delta_omega()[site];
        let ci = 0.5 * I * cfg.gamma()[site] / x;
        let k = rotated_k(phases[site]);
        let kv0 = k[0][0] * state[0] + k[0][1] * state[1];
        let kv1 = k[1][0] * state[0] + k[1][1] * state[1];
        state = [state[0] + ci * kv0, state[1] + ci * kv1];
        out.push(TransferState {
            t_i: state[0],
            r_i: state[1],
        });
    }
    Ok(out)
}
