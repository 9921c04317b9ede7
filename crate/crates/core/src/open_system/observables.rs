use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::basis::{dimension, mask};
use super::liouvillian::build_liouvillian;
use super::steady::{steady_state_with, DensityOperator, SteadyStateMethod};
use super::DriveConfig;
use crate::array_model::ArrayConfig;
use crate::error::{Error, Result};
use crate::linalg::I;

/// Steady state at one probe detuning and the derived output quantities.
#[derive(Debug, Clone)]
pub struct SteadyStateResult {
    pub delta_k: f64,
    pub rho: DensityOperator,
    pub t: C64,
    pub r: C64,
    pub transmittance: f64,
    pub reflectance: f64,
    /// Photons per unit time scattered inelastically into both outputs.
    pub inelastic_flux: f64,
}

/// Which output port of the waveguide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Transmitted,
    Reflected,
}

/// Weights `uᵢ` of the atomic part of an output field, `b_out ∝ Σᵢ uᵢ σᵢ⁻`:
/// `e^{i(φ_N−φᵢ)}√(Γᵢ/2)` for transmission and `e^{i(φᵢ−φ₁)}√(Γᵢ/2)` for
/// reflection.
pub fn output_weights(cfg: &ArrayConfig, out: Output) -> Vec<C64> {
    let p = cfg.phase();
    let (first, last) = (p[0], p[p.len() - 1]);
    cfg.gamma()
        .iter()
        .zip(p)
        .map(|(g, ph)| {
            let angle = match out {
                Output::Transmitted => last - ph,
                Output::Reflected => ph - first,
            };
            C64::from_polar((g / 2.0).sqrt(), angle)
        })
        .collect()
}

/// `⟨σᵢ⁻⟩ = tr(ρσᵢ⁻) = Σ ρ[x, x − mᵢ]` over states with atom i excited.
pub fn coherences(rho: &DensityOperator) -> Vec<C64> {
    let m = rho.matrix();
    let n = rho.n_atoms();
    (0..n)
        .map(|i| {
            let mi = mask(n, i);
            (0..dimension(n))
                .filter(|x| x & mi != 0)
                .map(|x| m[[x, x ^ mi]])
                .sum()
        })
        .collect()
}

/// `⟨σᵢ⁺σⱼ⁻⟩ = tr(ρσᵢ⁺σⱼ⁻)`.
fn pair_expectation(rho: &DensityOperator, i: usize, j: usize) -> C64 {
    let m = rho.matrix();
    let n = rho.n_atoms();
    let (mi, mj) = (mask(n, i), mask(n, j));
    let mut acc = C64::new(0.0, 0.0);
    for x in 0..dimension(n) {
        if x & mj == 0 {
            continue;
        }
        let y = x ^ mj;
        if i != j && y & mi != 0 {
            continue;
        }
        acc += m[[x, y | mi]];
    }
    acc
}

/// Input–output amplitudes
/// `t = e^{i(φ_N−φ₁)} − (i/α) Σᵢ e^{i(φ_N−φᵢ)}√(Γᵢ/2)⟨σᵢ⁻⟩` and
/// `r = −(i/α) Σᵢ e^{i(φᵢ−φ₁)}√(Γᵢ/2)⟨σᵢ⁻⟩`.
pub fn io_amplitudes(rho: &DensityOperator, dc: &DriveConfig) -> Result<(C64, C64)> {
    if dc.alpha.norm() == 0.0 {
        return Err(Error::ZeroDrive);
    }
    let cfg = &dc.base;
    let s = coherences(rho);
    let field = |out| -> C64 {
        output_weights(cfg, out)
            .iter()
            .zip(&s)
            .map(|(u, e)| u * e)
            .sum()
    };
    let p = cfg.phase();
    let through = C64::from_polar(1.0, p[p.len() - 1] - p[0]);
    let t = through - I * field(Output::Transmitted) / dc.alpha;
    let r = -I * field(Output::Reflected) / dc.alpha;
    Ok((t, r))
}

/// Incoherent photon flux of one output, `⟨c†c⟩ − |⟨c⟩|²` with
/// `c = Σᵢ uᵢσᵢ⁻`; the coherent drive part of `b_out` cancels.
pub fn output_fluctuation(rho: &DensityOperator, cfg: &ArrayConfig, out: Output) -> f64 {
    let u = output_weights(cfg, out);
    let s = coherences(rho);
    let n = u.len();
    let mut total = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            total += u[i].conj() * u[j] * pair_expectation(rho, i, j);
        }
    }
    let mean: C64 = u.iter().zip(&s).map(|(a, b)| a * b).sum();
    total.re - mean.norm_sqr()
}

/// Total inelastic flux into both outputs.
pub fn inelastic_flux(rho: &DensityOperator, dc: &DriveConfig) -> f64 {
    output_fluctuation(rho, &dc.base, Output::Transmitted)
        + output_fluctuation(rho, &dc.base, Output::Reflected)
}

/// Steady state and outputs at one drive point.
pub fn solve_drive(dc: &DriveConfig, method: SteadyStateMethod) -> Result<SteadyStateResult> {
    let l = build_liouvillian(dc)?;
    let rho = steady_state_with(&l, method)?;
    let (t, r) = io_amplitudes(&rho, dc)?;
    let flux = inelastic_flux(&rho, dc);
    Ok(SteadyStateResult {
        delta_k: dc.delta_k,
        t,
        r,
        transmittance: t.norm_sqr(),
        reflectance: r.norm_sqr(),
        inelastic_flux: flux,
        rho,
    })
}

/// [`solve_drive`] over a grid of probe detunings, evaluated in parallel.
pub fn drive_sweep(
    base: &ArrayConfig,
    grid: &[f64],
    alpha: C64,
    method: SteadyStateMethod,
) -> Result<Vec<SteadyStateResult>> {
    if let Some(i) = grid.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid { index: i + 1 });
    }
    grid.par_iter()
        .map(|&dk| solve_drive(&DriveConfig::new(base.clone(), dk, alpha), method))
        .collect()
}
