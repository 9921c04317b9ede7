use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerance on the regular-spacing check `φᵢ₊₁ − φᵢ = nπ`.
pub const SPACING_TOL: f64 = 1e-12;

/// An array of two-level atoms side-coupled to a waveguide.
///
/// All frequencies and rates are in units of the reference decay rate Γ and
/// detunings are measured from the mean atomic frequency, so `delta_omega`
/// sums to zero. Phases are `φᵢ = ω̄ xᵢ / v_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    delta_omega: Vec<f64>,
    gamma: Vec<f64>,
    phase: Vec<f64>,
    spacing_multiple: Option<u32>,
}

impl ArrayConfig {
    pub fn new(
        delta_omega: Vec<f64>,
        gamma: Vec<f64>,
        phase: Vec<f64>,
        spacing_multiple: Option<u32>,
    ) -> Result<Self> {
        let n = delta_omega.len();
        if gamma.len() != n || phase.len() != n {
            return Err(Error::InvalidConfig(format!(
                "length mismatch: {} detunings, {} decay rates, {} phases",
                n,
                gamma.len(),
                phase.len()
            )));
        }
        if let Some(i) = delta_omega.iter().position(|d| !d.is_finite()) {
            return Err(Error::InvalidConfig(format!("delta_omega[{i}] is not finite")));
        }
        let sum: f64 = delta_omega.iter().sum();
        if sum.abs() > 1e-12 * (n.max(1) as f64) {
            return Err(Error::InvalidConfig(format!(
                "detunings must have zero mean (sum = {sum:e})"
            )));
        }
        if let Some(i) = gamma.iter().position(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(Error::InvalidConfig(format!(
                "gamma[{i}] = {} must be positive",
                gamma[i]
            )));
        }
        if let Some(i) = phase.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidConfig(format!("phase[{i}] is not finite")));
        }
        if let Some(i) = phase.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidConfig(format!(
                "phases must be sorted ascending (phase[{}] < phase[{}])",
                i + 1,
                i
            )));
        }
        if let Some(m) = spacing_multiple {
            if m == 0 {
                return Err(Error::InvalidConfig("spacing_multiple must be positive".into()));
            }
            let step = m as f64 * PI;
            if let Some(i) = phase
                .windows(2)
                .position(|w| (w[1] - w[0] - step).abs() > SPACING_TOL)
            {
                return Err(Error::InvalidConfig(format!(
                    "phase[{}] - phase[{}] differs from {m}π",
                    i + 1,
                    i
                )));
            }
        }
        Ok(Self {
            delta_omega,
            gamma,
            phase,
            spacing_multiple,
        })
    }

    /// Atoms with equal decay `gamma` and neighbouring phase difference `nπ`,
    /// the first atom at phase zero.
    pub fn regular(delta_omega: Vec<f64>, gamma: f64, spacing_multiple: u32) -> Result<Self> {
        let n = delta_omega.len();
        let phase = (0..n)
            .map(|i| i as f64 * spacing_multiple as f64 * PI)
            .collect();
        Self::new(delta_omega, vec![gamma; n], phase, Some(spacing_multiple))
    }

    /// Equally spaced frequency ladder `δωⱼ = (j − (N−1)/2)·Δ` with unit
    /// decay rates and π spacing.
    pub fn ladder(n_atoms: usize, spacing: f64) -> Result<Self> {
        let centre = (n_atoms as f64 - 1.0) / 2.0;
        let delta = (0..n_atoms)
            .map(|j| (j as f64 - centre) * spacing)
            .collect();
        Self::regular(delta, 1.0, 1)
    }

    pub fn n_atoms(&self) -> usize {
        self.delta_omega.len()
    }

    pub fn delta_omega(&self) -> &[f64] {
        &self.delta_omega
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    pub fn spacing_multiple(&self) -> Option<u32> {
        self.spacing_multiple
    }

    /// The common decay rate, if all atoms share one.
    pub fn uniform_gamma(&self) -> Option<f64> {
        let first = *self.gamma.first()?;
        self.gamma
            .iter()
            .all(|g| (g - first).abs() <= 1e-12 * first)
            .then_some(first)
    }

    /// True when the collective-mode mapping applies: `nπ` spacing and equal
    /// decay rates.
    pub fn is_eit_regular(&self) -> bool {
        self.spacing_multiple.is_some() && self.uniform_gamma().is_some()
    }

    pub(crate) fn require_eit_regular(&self) -> Result<(u32, f64)> {
        let n = self
            .spacing_multiple
            .ok_or(Error::RequiresRegularArray("phase spacing of nπ"))?;
        let g = self
            .uniform_gamma()
            .ok_or(Error::RequiresRegularArray("equal decay rates"))?;
        Ok((n, g))
    }

    /// The same atoms seen from the other end of the waveguide.
    pub fn reversed(&self) -> Self {
        let last = self.phase.last().copied().unwrap_or(0.0);
        let mut delta_omega = self.delta_omega.clone();
        let mut gamma = self.gamma.clone();
        delta_omega.reverse();
        gamma.reverse();
        let phase = self.phase.iter().rev().map(|p| last - p).collect();
        Self {
            delta_omega,
            gamma,
            phase,
            spacing_multiple: self.spacing_multiple,
        }
    }
}

/// Shift detunings to zero mean. Returns the removed mean.
pub fn center_detunings(delta_omega: &mut [f64]) -> f64 {
    if delta_omega.is_empty() {
        return 0.0;
    }
    let mean = delta_omega.iter().sum::<f64>() / delta_omega.len() as f64;
    for d in delta_omega.iter_mut() {
        *d -= mean;
    }
    mean
}
