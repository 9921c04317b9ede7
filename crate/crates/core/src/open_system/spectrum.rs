use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, FactorizeInto, Solve};
use num_complex::Complex64 as C64;

use super::basis::{dimension, mask};
use super::hamiltonian::check_size;
use super::liouvillian::build_liouvillian;
use super::observables::{output_weights, Output};
use super::steady::{steady_state_with, SteadyStateMethod};
use super::DriveConfig;
use crate::error::{Error, Result};
use crate::linalg::column_major;

/// Largest array handled by the eigen-expansion of the Liouvillian.
pub const MAX_SPECTRUM_ATOMS: usize = 5;

/// Incoherent power spectra of both outputs, `ω` measured from the drive
/// frequency and normalised so that `∫ S dω` is the inelastic flux.
#[derive(Debug, Clone)]
pub struct InelasticSpectrum {
    pub omega: Vec<f64>,
    pub transmitted: Vec<f64>,
    pub reflected: Vec<f64>,
    pub tau_max: f64,
}

impl InelasticSpectrum {
    pub fn total(&self) -> Vec<f64> {
        self.transmitted
            .iter()
            .zip(&self.reflected)
            .map(|(a, b)| a + b)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SpectrumOptions {
    /// Correlation horizon; defaults to 20 over the slowest decay rate.
    pub tau_max: Option<f64>,
}

pub fn inelastic_spectrum(dc: &DriveConfig, omega: &[f64]) -> Result<InelasticSpectrum> {
    inelastic_spectrum_with(dc, omega, &SpectrumOptions::default())
}

/// Spectra from the regression theorem: with `L = Σₖ λₖ |Rₖ⟩⟨Lₖ|`,
/// `⟨c†(τ)c(0)⟩ − |⟨c⟩|² = Σ_{λₖ≠0} aₖ e^{λₖτ}`,
/// `aₖ = tr(c† Rₖ)·⟨Lₖ|cρ⟩`. The one-sided transform
/// `S(ω) = (1/π) Re ∫₀^{τ_max} e^{−iωτ} C(τ) dτ` is taken with the
/// trapezoidal rule, whose sum over each exponential is geometric and is
/// evaluated in closed form.
pub fn inelastic_spectrum_with(
    dc: &DriveConfig,
    omega: &[f64],
    opts: &SpectrumOptions,
) -> Result<InelasticSpectrum> {
    let n = dc.base.n_atoms();
    check_size(n, MAX_SPECTRUM_ATOMS, "the inelastic spectrum")?;
    let l = build_liouvillian(dc)?;
    let rho = steady_state_with(&l, SteadyStateMethod::Dense)?;
    let (lambda, right) = column_major(&l.to_dense()?).eig()?;

    // The stationary mode carries the coherent part |⟨c⟩|².
    let stationary = lambda
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(k, _)| k)
        .expect("nonempty spectrum");
    let slowest = lambda
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != stationary)
        .map(|(_, z)| -z.re)
        .fold(f64::INFINITY, f64::min);
    let tau_max = opts.tau_max.unwrap_or(20.0 / slowest);
    if !(slowest > 1e-12) || slowest * tau_max < 1.0 {
        return Err(Error::SlowConvergence {
            slowest_rate: slowest,
            inv_tau_max: 1.0 / tau_max,
        });
    }

    let lu = right.clone().factorize_into()?;
    let lam_max = lambda.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let w_max = omega.iter().map(|w| w.abs()).fold(0.0, f64::max);
    let h = 0.1 / lam_max.max(w_max).max(1e-300);
    let steps = (tau_max / h).ceil();

    let spectrum_of = |out: Output| -> Result<Vec<f64>> {
        let u = output_weights(&dc.base, out);
        let c_op = field_operator(n, &u);
        let c_rho = c_op.dot(rho.matrix());
        let coeffs_r = lu.solve(&Array1::from_iter(c_rho.iter().copied()))?;
        // tr(c† X) = Σ conj(c[a,b]) X[a,b] for row-major vec(X).
        let weights: Vec<(C64, C64)> = (0..lambda.len())
            .filter(|&k| k != stationary)
            .map(|k| {
                let overlap: C64 = c_op
                    .iter()
                    .zip(right.column(k))
                    .map(|(cv, x)| cv.conj() * x)
                    .sum();
                (lambda[k], overlap * coeffs_r[k])
            })
            .collect();
        Ok(omega
            .iter()
            .map(|&w| {
                weights
                    .iter()
                    .map(|&(lam, a)| a * trapezoid_exp(lam - C64::new(0.0, w), h, steps))
                    .sum::<C64>()
                    .re
                    / std::f64::consts::PI
            })
            .collect())
    };

    Ok(InelasticSpectrum {
        omega: omega.to_vec(),
        transmitted: spectrum_of(Output::Transmitted)?,
        reflected: spectrum_of(Output::Reflected)?,
        tau_max,
    })
}

/// Dense `Σᵢ uᵢ σᵢ⁻`.
fn field_operator(n: usize, u: &[C64]) -> Array2<C64> {
    let d = dimension(n);
    let mut op = Array2::zeros((d, d));
    for (i, &ui) in u.iter().enumerate() {
        let mi = mask(n, i);
        for x in (0..d).filter(|x| x & mi != 0) {
            op[[x ^ mi, x]] += ui;
        }
    }
    op
}

/// Trapezoidal rule for `∫₀^{Mh} e^{zτ} dτ` on M steps of width h:
/// `h[(1 − q^{M+1})/(1 − q) − (1 + q^M)/2]` with `q = e^{zh}`.
fn trapezoid_exp(z: C64, h: f64, steps: f64) -> C64 {
    let zh = z * h;
    let geometric = expm1(zh * (steps + 1.0)) / expm1(zh);
    h * (geometric - 0.5 * (1.0 + (zh * steps).exp()))
}

/// `eᶻ − 1` without cancellation for small |z|.
fn expm1(z: C64) -> C64 {
    if z.norm() < 1e-2 {
        let mut term = z;
        let mut sum = z;
        for k in 2..=8 {
            term *= z / k as f64;
            sum += term;
        }
        sum
    } else {
        z.exp() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_of_decaying_exponential() {
        // Exact ∫₀^∞ e^{zτ} = −1/z; the rule converges as O(h²).
        let z = C64::new(-0.7, 2.0);
        let exact = -1.0 / z;
        let approx = trapezoid_exp(z, 1e-3, 1e5);
        assert!((approx - exact).norm() < 1e-6 * exact.norm());
    }

    #[test]
    fn expm1_is_accurate_near_zero() {
        let z = C64::new(1e-9, -2e-9);
        assert!((expm1(z) - z).norm() < 1e-17);
        let w = C64::new(0.3, 0.1);
        assert!((expm1(w) - (w.exp() - 1.0)).norm() < 1e-15);
    }
}
