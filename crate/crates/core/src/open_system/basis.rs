//! Product basis of N two-level atoms. Basis index `Σᵢ eᵢ 2^{N−1−i}` with
//! `eᵢ ∈ {0 = g, 1 = e}`, so atom 1 is the most significant bit.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::linalg::c;

pub fn dimension(n_atoms: usize) -> usize {
    1usize << n_atoms
}

/// Bit mask of atom `site` (0-based).
#[inline]
pub(crate) fn mask(n_atoms: usize, site: usize) -> usize {
    1usize << (n_atoms - 1 - site)
}

/// Label such as `"egg"` for a basis index.
pub fn basis_label(n_atoms: usize, index: usize) -> String {
    (0..n_atoms)
        .map(|i| if index & mask(n_atoms, i) != 0 { 'e' } else { 'g' })
        .collect()
}

/// Basis index of a label such as `"egg"`.
pub fn basis_index(label: &str) -> Option<usize> {
    label.chars().try_fold(0usize, |acc, ch| match ch {
        'g' => Some(acc << 1),
        'e' => Some((acc << 1) | 1),
        _ => None,
    })
}

/// Dense `σᵢ⁻ = |g⟩⟨e|` on atom `site`.
pub fn lowering_operator(n_atoms: usize, site: usize) -> Array2<C64> {
    let d = dimension(n_atoms);
    let m = mask(n_atoms, site);
    let mut op = Array2::zeros((d, d));
    for x in (0..d).filter(|x| x & m != 0) {
        op[[x ^ m, x]] = c(1.0);
    }
    op
}

pub fn ground_state(n_atoms: usize) -> Array1<C64> {
    let mut v = Array1::zeros(dimension(n_atoms));
    v[0] = c(1.0);
    v
}

/// Sparse operator: `(row, col, value)` triples.
#[derive(Debug, Clone, Default)]
pub(crate) struct SparseOp {
    pub dim: usize,
    pub entries: Vec<(usize, usize, C64)>,
}

impl SparseOp {
    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for &(r, col, v) in &self.entries {
            m[[r, col]] += v;
        }
        m
    }
}
