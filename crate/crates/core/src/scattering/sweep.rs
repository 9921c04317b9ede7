use rayon::prelude::*;

use super::{closed_form, scatter, ScatteringResult};
use crate::array_model::ArrayConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SpectrumSweep {
    pub grid: Vec<f64>,
    pub results: Vec<ScatteringResult>,
}

impl SpectrumSweep {
    pub fn reflectance(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.reflectance).collect()
    }
}

/// Amplitudes on a strictly increasing grid, using the closed form when the
/// array allows it and the transfer matrix otherwise. Points are evaluated in
/// parallel.
pub fn sweep(cfg: &ArrayConfig, grid: &[f64]) -> Result<SpectrumSweep> {
    if let Some(i) = grid.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid { index: i });
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid { index: i + 1 });
    }
    let regular = cfg.is_eit_regular();
    let results = grid
        .par_iter()
        .map(|&x| {
            if regular {
                closed_form(cfg, x)
            } else {
                scatter(cfg, x)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumSweep {
        grid: grid.to_vec(),
        results,
    })
}

/// Number of reflectance minima whose depth below the lower of the two
/// flanking maxima is at least `min_prominence`.
pub fn count_reflection_dips(reflectance: &[f64], min_prominence: f64) -> usize {
    let n = reflectance.len();
    if n < 3 {
        return 0;
    }
    let mut count = 0;
    let mut i = 1;
    while i < n - 1 {
        // Treat a flat run of equal values as a single point.
        let mut j = i;
        while j + 1 < n - 1 && reflectance[j + 1] == reflectance[i] {
            j += 1;
        }
        let v = reflectance[i];
        if reflectance[i - 1] > v && reflectance[j + 1] > v {
            let left_max = peak_towards(reflectance[..i].iter().rev(), v);
            let right_max = peak_towards(reflectance[j + 1..].iter(), v);
            if left_max.min(right_max) - v >= min_prominence {
                count += 1;
            }
        }
        i = j + 1;
    }
    count
}

/// Highest value reached walking away from a minimum of value `floor` before
/// the curve drops below it again.
fn peak_towards<'a>(values: impl Iterator<Item = &'a f64>, floor: f64) -> f64 {
    let mut best = floor;
    for &v in values {
        if v < floor {
            break;
        }
        best = best.max(v);
    }
    best
}
