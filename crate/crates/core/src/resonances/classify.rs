use num_complex::Complex64 as C64;

use super::PoleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowLabel {
    Eit,
    Ats,
    Ambiguous,
}

impl WindowLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowLabel::Eit => "EIT",
            WindowLabel::Ats => "ATS",
            WindowLabel::Ambiguous => "ambiguous",
        }
    }
}

impl std::fmt::Display for WindowLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Thresholds for [`classify_windows`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyParams {
    /// A resonance counts as wide relative to a narrow one when its
    /// half-width is larger by at least this factor.
    pub min_width_ratio: f64,
    /// Real parts closer than this are treated as coincident.
    pub coincidence_tol: f64,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        Self {
            min_width_ratio: 2.0,
            coincidence_tol: 1e-8,
        }
    }
}

/// Label each transparency window.
///
/// EIT: the dip sits inside the half-width of a narrow pole which itself
/// lies inside the half-width of a wider pole, so the two resonances overlap
/// and interfere. ATS: otherwise, if the nearest poles on either side of the
/// dip are separated by more than the sum of their half-widths. Anything else
/// is left ambiguous.
pub fn classify_windows(ps: &PoleSet, params: &ClassifyParams) -> Vec<(f64, WindowLabel)> {
    ps.window_centres
        .iter()
        .map(|&x| (x, classify_one(&ps.poles, x, params)))
        .collect()
}

fn half_width(z: &C64) -> f64 {
    z.im.abs()
}

fn classify_one(poles: &[C64], x: f64, params: &ClassifyParams) -> WindowLabel {
    let interferes = poles.iter().any(|n| {
        (x - n.re).abs() < half_width(n)
            && poles.iter().any(|w| {
                half_width(w) > params.min_width_ratio * half_width(n)
                    && (n.re - w.re).abs() < half_width(w)
            })
    });
    if interferes {
        return WindowLabel::Eit;
    }

    let below = nearest(poles.iter().filter(|z| z.re < x), |z| z.re, params);
    let above = nearest(poles.iter().filter(|z| z.re > x), |z| -z.re, params);
    match (below, above) {
        (Some(l), Some(h)) if h.re - l.re > half_width(&l) + half_width(&h) => WindowLabel::Ats,
        _ => WindowLabel::Ambiguous,
    }
}

/// The pole maximising `key`; among poles tied within tolerance, the widest.
fn nearest<'a>(
    candidates: impl Iterator<Item = &'a C64> + Clone,
    key: impl Fn(&C64) -> f64,
    params: &ClassifyParams,
) -> Option<C64> {
    let best = candidates.clone().map(&key).fold(f64::NEG_INFINITY, f64::max);
    candidates
        .filter(|z| best - key(z) <= params.coincidence_tol)
        .max_by(|a, b| half_width(a).total_cmp(&half_width(b)))
        .copied()
}
