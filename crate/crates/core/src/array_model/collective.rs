//! Superradiant/subradiant collective modes of a regularly spaced array of
//! identical-linewidth atoms.

use std::f64::consts::PI;

use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2};
use num_complex::Complex64 as C64;

use super::ArrayConfig;
use crate::error::{Error, Result};
use crate::linalg::hermitian_eig;

/// Default minimum frequency gap before two atoms count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Sign `(−1)^{(j−1)n}` of atom `j` (0-based) for spacing multiple `n`.
pub(crate) fn site_sign(j: usize, n: u32) -> f64 {
    if (j as u64 * n as u64).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Unitary mapping atomic lowering operators to collective ones,
/// `Uᵢⱼ = N^{-1/2} e^{−i(2π/N)(i−1)j} (−1)^{(j−1)n}` with 1-based `i, j`.
///
/// Row 1 is the superradiant mode.
pub fn collective_transform(cfg: &ArrayConfig) -> Result<Array2<C64>> {
    let (n_mult, _) = cfg.require_eit_regular()?;
    Ok(fourier_block(cfg.n_atoms(), |j| site_sign(j, n_mult)))
}

/// `(1/√m) e^{−i(2π/m)(p−1)q} · sign(q)` for 1-based `p, q`; `sign` is
/// indexed 0-based.
pub(crate) fn fourier_block(m: usize, sign: impl Fn(usize) -> f64) -> Array2<C64> {
    let norm = 1.0 / (m as f64).sqrt();
    Array2::from_shape_fn((m, m), |(p, q)| {
        let angle = -2.0 * PI * (p as f64) * ((q + 1) as f64) / m as f64;
        C64::from_polar(norm * sign(q), angle)
    })
}

/// Couplings between collective modes induced by the frequency spread,
/// `g̃ᵢⱼ = (1/N) Σₘ δωₘ e^{i(2π/N)(j−i)m}`. Hermitian; diagonal vanishes for
/// zero-mean detunings.
pub fn coupling_strengths(cfg: &ArrayConfig) -> Result<Array2<C64>> {
    cfg.require_eit_regular()?;
    let n = cfg.n_atoms();
    let dw = cfg.delta_omega();
    Ok(Array2::from_shape_fn((n, n), |(i, j)| {
        let k = j as f64 - i as f64;
        dw.iter()
            .enumerate()
            .map(|(m, &d)| C64::from_polar(d, 2.0 * PI * k * (m + 1) as f64 / n as f64))
            .sum::<C64>()
            / n as f64
    }))
}

/// Effective (N+1)-level parameters of the array: one bright mode of decay
/// NΓ coupled to N−1 mutually decoupled dark modes.
#[derive(Debug, Clone)]
pub struct CollectiveDecomposition {
    /// NΓ.
    pub superradiant_decay: f64,
    /// Dark-mode detunings Δᵢ, ascending.
    pub effective_detunings: Vec<f64>,
    /// Bright–dark couplings gᵢ, paired with `effective_detunings`.
    pub effective_couplings: Vec<C64>,
    /// Full N×N collective coupling matrix g̃.
    pub coupling_matrix: Array2<C64>,
    /// Rows are the dark modes in the basis of the subradiant collective
    /// modes (`σ_Dᵢ = Σⱼ Vᵢⱼ σ̃ⱼ₊₁`).
    pub subradiant_transform: Array2<C64>,
}

impl CollectiveDecomposition {
    pub fn n_atoms(&self) -> usize {
        self.coupling_matrix.nrows()
    }

    /// g̃ restricted to the subradiant modes 2..N.
    pub fn subradiant_block(&self) -> ArrayView2<'_, C64> {
        self.coupling_matrix.slice(s![1.., 1..])
    }

    /// Couplings g̃₁ⱼ between the bright mode and subradiant modes j = 2..N.
    pub fn bright_dark_row(&self) -> ArrayView1<'_, C64> {
        self.coupling_matrix.slice(s![0, 1..])
    }
}

/// Collective-mode decomposition with the default degeneracy tolerance.
pub fn decompose(cfg: &ArrayConfig) -> Result<CollectiveDecomposition> {
    decompose_with_tolerance(cfg, DEGENERACY_TOL)
}

/// As [`decompose`], rejecting pairs of atoms closer than `tol` in frequency.
/// `tol = 0` disables the check.
pub fn decompose_with_tolerance(cfg: &ArrayConfig, tol: f64) -> Result<CollectiveDecomposition> {
    let (_, gamma) = cfg.require_eit_regular()?;
    let n = cfg.n_atoms();
    if n == 0 {
        return Err(Error::InvalidConfig("empty array".into()));
    }
    if tol > 0.0 {
        check_distinct(cfg.delta_omega(), tol)?;
    }

    let g_tilde = coupling_strengths(cfg)?;
    let block = g_tilde.slice(s![1.., 1..]).to_owned();
    let row = g_tilde.slice(s![0, 1..]).to_owned();

    let (values, mut vectors) = if n > 1 {
        hermitian_eig(&block)?
    } else {
        (Array1::zeros(0), Array2::zeros((0, 0)))
    };
    for col in vectors.columns_mut() {
        fix_gauge(col);
    }

    // V = W†, so gᵢ = Σⱼ g̃₁,ⱼ₊₁ V*ᵢⱼ = row · wᵢ.
    let couplings = vectors
        .columns()
        .into_iter()
        .map(|w| w.iter().zip(&row).map(|(a, b)| a * b).sum())
        .collect();
    let transform = vectors.t().mapv(|z| z.conj());

    Ok(CollectiveDecomposition {
        superradiant_decay: n as f64 * gamma,
        effective_detunings: values.to_vec(),
        effective_couplings: couplings,
        coupling_matrix: g_tilde,
        subradiant_transform: transform,
    })
}

fn check_distinct(dw: &[f64], tol: f64) -> Result<()> {
    let mut order: Vec<usize> = (0..dw.len()).collect();
    order.sort_by(|&a, &b| dw[a].total_cmp(&dw[b]));
    for w in order.windows(2) {
        let gap = dw[w[1]] - dw[w[0]];
        if gap < tol {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::NearDegenerate { first, second, gap });
        }
    }
    Ok(())
}

/// Rotate a vector so its first non-negligible component is real positive.
fn fix_gauge(mut col: ndarray::ArrayViewMut1<'_, C64>) {
    let scale = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(lead) = col.iter().find(|z| z.norm() > 1e-12 * scale).copied() {
        let phase = lead.conj() / lead.norm();
        col.mapv_inplace(|z| z * phase);
    }
}
