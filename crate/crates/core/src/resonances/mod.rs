//! Pole–residue form of the reflection amplitude and the EIT/ATS character of
//! each transparency window.

mod classify;
mod poles;
pub mod polynomial;

pub use classify::{classify_windows, ClassifyParams, WindowLabel};
pub use poles::{
    denominator_from_emitters, denominator_polynomial, effective_emitters, find_poles,
    partial_fractions, partial_fractions_of_emitters, poles_of_emitters, reflection_numerator,
    PoleSet, POLE_SEPARATION_TOL,
};
pub use polynomial::Polynomial;

use crate::array_model::ArrayConfig;
use crate::error::Result;

/// Poles, residues and window labels in one pass.
pub fn analyze(cfg: &ArrayConfig, params: &ClassifyParams) -> Result<PoleSet> {
    let mut ps = partial_fractions(cfg)?;
    ps.window_labels = classify_windows(&ps, params);
    Ok(ps)
}
