//! Dense complex polynomials with ascending coefficients.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::linalg::{c, eigenvalues};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    /// `coeffs[k]` multiplies `x^k`.
    pub coeffs: Vec<C64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn constant(a: C64) -> Self {
        Self::new(vec![a])
    }

    /// `Πᵢ (x − rᵢ)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Self::constant(c(1.0));
        for &r in roots {
            p = p.mul_linear(c(r));
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> C64 {
        *self.coeffs.last().expect("never empty")
    }

    /// Multiply by `(x − root)`.
    pub fn mul_linear(&self, root: C64) -> Self {
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            out[k + 1] += a;
            out[k] -= root * a;
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, k: usize| p.coeffs.get(k).copied().unwrap_or_default();
        Self::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn scale(&self, a: C64) -> Self {
        Self::new(self.coeffs.iter().map(|z| z * a).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &a| acc * x + a)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(C64::new(0.0, 0.0));
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        )
    }

    /// All complex roots: companion-matrix eigenvalues refined by a few
    /// Newton steps.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        let mut comp = Array2::zeros((n, n));
        for i in 1..n {
            comp[[i, i - 1]] = c(1.0);
        }
        for i in 0..n {
            comp[[i, n - 1]] = -self.coeffs[i] / lead;
        }
        let d = self.derivative();
        Ok(eigenvalues(&comp)?
            .into_iter()
            .map(|z| self.polish(&d, z))
            .collect())
    }

    fn polish(&self, d: &Self, mut z: C64) -> C64 {
        let mut fz = self.eval(z).norm();
        for _ in 0..4 {
            let dz = d.eval(z);
            if dz.norm() == 0.0 {
                break;
            }
            let next = z - self.eval(z) / dz;
            let fnext = self.eval(next).norm();
            if fnext >= fz {
                break;
            }
            z = next;
            fz = fnext;
        }
        z
    }
}
