
use super::ScatteringResult;
use crate::array_model::{ArrayConfig, Emitter};
use crate::error::Result;
use crate::linalg::{c, I};

/// Rational amplitudes for `nπ` spacing and equal decay rates:
/// `t = 1/(1 + i(Γ/2)Σᵢ xᵢ⁻¹)` and `r = t − 1`, written with
/// numerator and denominator multiplied through by `Πᵢ xᵢ`, `xᵢ = Δₖ − δωᵢ`,
/// so they stay finite at every atomic frequency.
pub fn closed_form(cfg: &ArrayConfig, delta_k: f64) -> Result<ScatteringResult> {
    let (_, gamma) = cfg.require_eit_regular()?;
    // Atoms at the same frequency act as one emitter of summed decay; merging
    // them keeps P and Q from vanishing together at that frequency.
    let mut freqs = cfg.delta_omega().to_vec();
    freqs.sort_by(f64::total_cmp);
    let mut emitters: Vec<Emitter> = Vec::with_capacity(freqs.len());
    for f in freqs {
        match emitters.last_mut() {
            Some(e) if e.detuning == f => e.decay += gamma,
            _ => emitters.push(Emitter {
                detuning: f,
                decay: gamma,
            }),
        }
    }
    Ok(closed_form_emitters(&emitters, delta_k))
}

/// The same rational form for arbitrary point emitters in `nπ` spacing.
///
/// `t = Πₑxₑ / P`, `r = −Q / P` with `Q = i Σₑ (Γₑ/2) Π_{f≠e} x_f` and
/// `P = Πₑxₑ + Q`.
pub fn closed_form_emitters(emitters: &[Emitter], delta_k: f64) -> ScatteringResult {
    let x: Vec<f64> = emitters.iter().map(|e| delta_k - e.detuning).collect();
    let prod: f64 = x.iter().product();
    let q: f64 = emitters
        .iter()
        .enumerate()
        .map(|(e, em)| {
            let others: f64 = x
                .iter()
                .enumerate()
                .filter(|&(f, _)| f != e)
                .map(|(_, v)| v)
                .product();
            0.5 * em.decay * others
        })
        .sum();
    let q = I * q;
    let p = c(prod) + q;
    ScatteringResult::new(delta_k, c(prod) / p, -q / p)
}
