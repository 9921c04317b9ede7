//! Small dense linear-algebra helpers shared across modules.

use ndarray::{Array1, Array2, ShapeBuilder};
use ndarray_linalg::{Eig, Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::Result;

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending and
/// eigenvectors in columns.
pub fn hermitian_eig(a: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    // Row-major complex input comes back with conjugated eigenvectors.
    Ok(column_major(a).eigh(UPLO::Lower)?)
}

pub(crate) fn column_major(a: &Array2<C64>) -> Array2<C64> {
    let mut f = Array2::zeros(a.raw_dim().f());
    f.assign(a);
    f
}

/// Eigenvalues of a general complex matrix, in LAPACK order.
pub fn eigenvalues(a: &Array2<C64>) -> Result<Vec<C64>> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let (vals, _) = a.eig()?;
    Ok(vals.to_vec())
}

/// Largest distance between paired entries of two spectra under a greedy
/// nearest-neighbour pairing. Returns `f64::INFINITY` on length mismatch.
pub fn spectral_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0_f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("lengths match");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Max-abs entry of `a − b`.
pub fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Conjugate transpose.
pub fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}
