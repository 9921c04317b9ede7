use ndarray::{Array1, Array2, ShapeBuilder};
use ndarray_linalg::{FactorizeInto, LeastSquaresSvd, ReciprocalConditionNum, Solve};
use num_complex::Complex64 as C64;

use super::basis::dimension;
use super::liouvillian::{Liouvillian, MAX_DENSE_ATOMS};
use crate::error::{Error, Result};
use crate::linalg::{c, column_major, hermitian_eig};

/// Tolerance on density-matrix invariants and the steady-state residual.
pub const STATE_TOL: f64 = 1e-10;

/// Arrays up to this size use the SVD least-squares path, which also
/// detects non-unique steady states.
pub const MAX_LSTSQ_ATOMS: usize = 5;

#[derive(Debug, Clone)]
pub struct DensityOperator {
    rho: Array2<C64>,
}

impl DensityOperator {
    /// Checks Hermiticity, unit trace and positivity within [`STATE_TOL`].
    pub fn new(rho: Array2<C64>) -> Result<Self> {
        let d = rho.nrows();
        if rho.ncols() != d || !d.is_power_of_two() {
            return Err(Error::Unsupported(format!(
                "density matrix of shape {:?}",
                rho.dim()
            )));
        }
        let herm = rho
            .indexed_iter()
            .map(|((a, b), z)| (z - rho[[b, a]].conj()).norm())
            .fold(0.0, f64::max);
        if herm > STATE_TOL {
            return Err(Error::NotPhysical {
                what: "anti-Hermitian part",
                value: herm,
            });
        }
        let tr: C64 = rho.diag().sum();
        if (tr - 1.0).norm() > STATE_TOL {
            return Err(Error::NotPhysical {
                what: "trace - 1",
                value: (tr - 1.0).norm(),
            });
        }
        let sym = (&rho + &rho.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
        let (vals, _) = hermitian_eig(&sym)?;
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -STATE_TOL {
            return Err(Error::NotPhysical {
                what: "smallest eigenvalue",
                value: min,
            });
        }
        Ok(Self { rho })
    }

    pub fn ground(n_atoms: usize) -> Self {
        let d = dimension(n_atoms);
        let mut rho = Array2::zeros((d, d));
        rho[[0, 0]] = c(1.0);
        Self { rho }
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.rho
    }

    pub fn n_atoms(&self) -> usize {
        self.rho.nrows().trailing_zeros() as usize
    }

    /// `⟨ψ|ρ|ψ⟩` for a normalised pure state.
    pub fn fidelity(&self, psi: &Array1<C64>) -> f64 {
        let rp = self.rho.dot(psi);
        psi.iter().zip(&rp).map(|(a, b)| a.conj() * b).sum::<C64>().re
    }

    /// `tr(ρA)`.
    pub fn expect(&self, op: &Array2<C64>) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for ((a, b), r) in self.rho.indexed_iter() {
            acc += r * op[[b, a]];
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SteadyStateMethod {
    /// Least squares for N ≤ 5, dense LU for N = 6, GMRES beyond.
    #[default]
    Auto,
    Dense,
    MatrixFree,
}

/// Settings for the matrix-free solver.
#[derive(Debug, Clone, Copy)]
pub struct GmresOptions {
    pub restart: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self {
            restart: 120,
            max_iterations: 20_000,
            tolerance: 1e-13,
        }
    }
}

pub fn steady_state(l: &Liouvillian) -> Result<DensityOperator> {
    steady_state_with(l, SteadyStateMethod::Auto)
}

/// Solves `Lρ = 0`, `tr ρ = 1`, returning the Hermitian, normalised state.
pub fn steady_state_with(l: &Liouvillian, method: SteadyStateMethod) -> Result<DensityOperator> {
    let n = l.n_atoms();
    let x = match method {
        SteadyStateMethod::Auto if n <= MAX_LSTSQ_ATOMS => least_squares(l)?,
        SteadyStateMethod::Auto if n <= MAX_DENSE_ATOMS => bordered_lu(l)?,
        SteadyStateMethod::Auto | SteadyStateMethod::MatrixFree => {
            gmres(l, &GmresOptions::default())?
        }
        SteadyStateMethod::Dense if n <= MAX_LSTSQ_ATOMS => least_squares(l)?,
        SteadyStateMethod::Dense => bordered_lu(l)?,
    };
    finish(l, x)
}

fn finish(l: &Liouvillian, x: Array1<C64>) -> Result<DensityOperator> {
    let d = l.dimension();
    let raw = x.into_shape_with_order((d, d)).expect("d² entries");
    let mut rho = (&raw + &raw.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
    let tr: C64 = rho.diag().sum();
    rho.mapv_inplace(|z| z / tr);
    let residual = l.apply(&rho).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if residual > STATE_TOL {
        return Err(Error::SteadyStateResidual {
            residual,
            tol: STATE_TOL,
        });
    }
    DensityOperator::new(rho)
}

/// `[L; vec(I)ᵀ] x = (0, 1)` by SVD least squares. The stacked matrix loses
/// column rank exactly when L has more than one stationary state.
fn least_squares(l: &Liouvillian) -> Result<Array1<C64>> {
    let d = l.dimension();
    let dense = l.to_dense()?;
    let m = d * d;
    let mut a = Array2::<C64>::zeros((m + 1, m).f());
    a.slice_mut(ndarray::s![..m, ..]).assign(&dense);
    for k in 0..d {
        a[[m, k * d + k]] = c(1.0);
    }
    let mut rhs = Array1::<C64>::zeros(m + 1);
    rhs[m] = c(1.0);
    let res = a.least_squares(&rhs)?;
    let s = &res.singular_values;
    let smax = s.iter().copied().fold(0.0, f64::max);
    let deficient = s.iter().filter(|&&v| v <= 1e-10 * smax).count();
    if deficient > 0 {
        return Err(Error::NonUniqueSteadyState {
            nullity: 1 + deficient,
        });
    }
    Ok(res.solution)
}

/// `(L + vec(w)·vec(I)ᵀ) x = vec(w)` with `w = |G⟩⟨G|`: any solution has unit
/// trace and lies in the kernel of L, and the matrix is regular iff that
/// kernel is one-dimensional.
fn bordered_lu(l: &Liouvillian) -> Result<Array1<C64>> {
    let d = l.dimension();
    let mut a = column_major(&l.to_dense()?);
    for k in 0..d {
        a[[0, k * d + k]] += 1.0;
    }
    let mut rhs = Array1::<C64>::zeros(d * d);
    rhs[0] = c(1.0);
    let lu = a.factorize_into()?;
    let rcond = lu.rcond()?;
    if rcond < 1e-13 {
        // The nullity itself is not available from LU; 2 is a lower bound.
        return Err(Error::NonUniqueSteadyState { nullity: 2 });
    }
    Ok(lu.solve(&rhs)?)
}

/// Restarted GMRES on the bordered operator with Jacobi right
/// preconditioning; the diagonal of L is `−i(Hₐₐ − H*_bb)`.
fn gmres(l: &Liouvillian, opts: &GmresOptions) -> Result<Array1<C64>> {
    let d = l.dimension();
    let m = d * d;
    let h = l.effective_hamiltonian();
    let mut diag = Array1::<C64>::zeros(m);
    for a in 0..d {
        for b in 0..d {
            diag[a * d + b] = C64::new(0.0, -1.0) * (h[[a, a]] - h[[b, b]].conj());
        }
    }
    diag[0] += 1.0;
    let inv_diag = diag.mapv(|z| if z.norm() > 1e-14 { 1.0 / z } else { c(1.0) });

    let op = |v: &Array1<C64>| -> Array1<C64> {
        let pv = v * &inv_diag;
        let rho = pv.view().into_shape_with_order((d, d)).expect("d²").to_owned();
        let mut out = l
            .apply(&rho)
            .into_shape_with_order(m)
            .expect("d²");
        let tr: C64 = (0..d).map(|k| pv[k * d + k]).sum();
        out[0] += tr;
        out
    };

    let mut rhs = Array1::<C64>::zeros(m);
    rhs[0] = c(1.0);
    let bnorm = 1.0;
    let mut y = Array1::<C64>::zeros(m);
    let mut iterations = 0;
    let k = opts.restart;
    let mut resid = bnorm;
    while iterations < opts.max_iterations {
        let r = &rhs - &op(&y);
        let beta = norm(&r);
        resid = beta;
        if beta <= opts.tolerance * bnorm {
            return Ok(&y * &inv_diag);
        }
        let mut basis: Vec<Array1<C64>> = vec![r.mapv(|z| z / beta)];
        let mut hess = Array2::<C64>::zeros((k + 1, k));
        let (mut cs, mut sn) = (vec![c(0.0); k], vec![c(0.0); k]);
        let mut g = vec![c(0.0); k + 1];
        g[0] = c(beta);
        let mut used = 0;
        for j in 0..k {
            iterations += 1;
            let mut w = op(&basis[j]);
            for (i, v) in basis.iter().enumerate() {
                let hij = dot(v, &w);
                hess[[i, j]] = hij;
                w.scaled_add(-hij, v);
            }
            let wn = norm(&w);
            hess[[j + 1, j]] = c(wn);
            for i in 0..j {
                let (a, b) = (hess[[i, j]], hess[[i + 1, j]]);
                hess[[i, j]] = cs[i].conj() * a + sn[i].conj() * b;
                hess[[i + 1, j]] = -sn[i] * a + cs[i] * b;
            }
            let (a, b) = (hess[[j, j]], hess[[j + 1, j]]);
            let den = (a.norm_sqr() + b.norm_sqr()).sqrt();
            cs[j] = if den == 0.0 { c(1.0) } else { a / den };
            sn[j] = if den == 0.0 { c(0.0) } else { b / den };
            hess[[j, j]] = c(den);
            hess[[j + 1, j]] = c(0.0);
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j].conj() * g[j];
            used = j + 1;
            resid = g[j + 1].norm();
            if resid <= opts.tolerance * bnorm || wn == 0.0 {
                break;
            }
            basis.push(w.mapv(|z| z / wn));
        }
        let mut coef = vec![c(0.0); used];
        for i in (0..used).rev() {
            let s: C64 = (i + 1..used).map(|q| hess[[i, q]] * coef[q]).sum();
            coef[i] = (g[i] - s) / hess[[i, i]];
        }
        for (i, ci) in coef.iter().enumerate() {
            y.scaled_add(*ci, &basis[i]);
        }
    }
    Err(Error::NotConverged {
        iterations,
        residual: resid,
    })
}

fn dot(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &Array1<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
