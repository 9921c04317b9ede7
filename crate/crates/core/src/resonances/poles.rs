use std::cmp::Ordering;

use num_complex::Complex64 as C64;

use super::classify::WindowLabel;
use super::polynomial::Polynomial;
use crate::array_model::{reduce_degenerate, ArrayConfig, Emitter, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{c, I};

/// Minimum separation between two poles before the partial-fraction form is
/// considered ill-conditioned.
pub const POLE_SEPARATION_TOL: f64 = 1e-8;

/// Real parts closer than this count as equal when ordering poles.
const ORDER_TOL: f64 = 1e-9;

/// Resonances of the reflection amplitude `r(x) = Σᵢ Aᵢ/(x − Zᵢ)`.
#[derive(Debug, Clone, Default)]
pub struct PoleSet {
    /// Sorted by real part, then imaginary part.
    pub poles: Vec<C64>,
    /// Aligned with `poles`; empty until filled by [`partial_fractions`].
    pub residues: Vec<C64>,
    /// Zeros of r on the real axis (centres of the transparency windows),
    /// ascending.
    pub window_centres: Vec<f64>,
    pub window_labels: Vec<(f64, WindowLabel)>,
}

impl PoleSet {
    /// `Σᵢ Aᵢ/(x − Zᵢ)`.
    pub fn reflection(&self, x: f64) -> C64 {
        self.poles
            .iter()
            .zip(&self.residues)
            .map(|(z, a)| a / (c(x) - z))
            .sum()
    }
}

/// The effective point emitters of a regular array, with repeated
/// frequencies merged by [`reduce_degenerate`].
pub fn effective_emitters(cfg: &ArrayConfig) -> Result<Vec<Emitter>> {
    Ok(reduce_degenerate(cfg, DEGENERACY_TOL)?.effective_emitters)
}

/// `P(x) = Πₑ(x − ωₑ) + i Σₑ (Γₑ/2) Π_{f≠e}(x − ω_f)` over the effective
/// emitters: the monic denominator of t and r.
pub fn denominator_polynomial(cfg: &ArrayConfig) -> Result<Polynomial> {
    let em = effective_emitters(cfg)?;
    Ok(denominator_from_emitters(&em))
}

pub fn denominator_from_emitters(emitters: &[Emitter]) -> Polynomial {
    let freqs: Vec<f64> = emitters.iter().map(|e| e.detuning).collect();
    Polynomial::from_roots(&freqs).add(&decay_sum(emitters).scale(0.5 * I))
}

/// Numerator of r, `−i Σₑ (Γₑ/2) Π_{f≠e}(x − ω_f)`.
pub fn reflection_numerator(emitters: &[Emitter]) -> Polynomial {
    decay_sum(emitters).scale(-0.5 * I)
}

/// `Σₑ Γₑ Π_{f≠e}(x − ω_f)`.
fn decay_sum(emitters: &[Emitter]) -> Polynomial {
    let mut sum = Polynomial::constant(C64::new(0.0, 0.0));
    for (e, em) in emitters.iter().enumerate() {
        let others: Vec<f64> = emitters
            .iter()
            .enumerate()
            .filter(|&(f, _)| f != e)
            .map(|(_, o)| o.detuning)
            .collect();
        sum = sum.add(&Polynomial::from_roots(&others).scale(c(em.decay)));
    }
    sum
}

fn pole_order(a: &C64, b: &C64) -> Ordering {
    if (a.re - b.re).abs() <= ORDER_TOL {
        a.im.total_cmp(&b.im)
    } else {
        a.re.total_cmp(&b.re)
    }
}

/// Roots of the denominator polynomial and the real zeros of r.
pub fn find_poles(cfg: &ArrayConfig) -> Result<PoleSet> {
    let em = effective_emitters(cfg)?;
    poles_of_emitters(&em)
}

pub fn poles_of_emitters(emitters: &[Emitter]) -> Result<PoleSet> {
    let p = denominator_from_emitters(emitters);
    let mut poles = p.roots()?;
    poles.sort_by(pole_order);
    for (i, a) in poles.iter().enumerate() {
        for b in &poles[i + 1..] {
            if (a - b).norm() < POLE_SEPARATION_TOL {
                return Err(Error::IllConditioned {
                    first: *a,
                    second: *b,
                    tol: POLE_SEPARATION_TOL,
                });
            }
        }
    }

    // Between consecutive emitter frequencies Σ Γₑ/(x − ωₑ) falls from +∞ to
    // −∞, so all zeros of the decay sum are real and simple.
    let mut centres: Vec<f64> = decay_sum(emitters)
        .roots()?
        .into_iter()
        .map(|z| z.re)
        .collect();
    centres.sort_by(f64::total_cmp);

    Ok(PoleSet {
        poles,
        window_centres: centres,
        ..PoleSet::default()
    })
}

/// Poles with residues `Aᵢ = N(Zᵢ)/P′(Zᵢ)`, `N` the numerator of r.
pub fn partial_fractions(cfg: &ArrayConfig) -> Result<PoleSet> {
    let em = effective_emitters(cfg)?;
    partial_fractions_of_emitters(&em)
}

pub fn partial_fractions_of_emitters(emitters: &[Emitter]) -> Result<PoleSet> {
    let mut ps = poles_of_emitters(emitters)?;
    let dp = denominator_from_emitters(emitters).derivative();
    let num = reflection_numerator(emitters);
    ps.residues = ps.poles.iter().map(|&z| num.eval(z) / dp.eval(z)).collect();
    Ok(ps)
}
