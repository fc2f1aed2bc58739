//! Empirical distribution of `α(x) = ‖A x‖₂` over redrawn sign vectors.

use crate::error::{Error, Result};
use crate::operators::ChainSpec;
use crate::rng::{derive_seed, Role};
use crate::scalar::DenseVector;

/// Levels reported by [`chaos_statistics`]; the first is the median.
pub const CHAOS_LEVELS: [f64; 4] = [0.5, 0.9, 0.99, 0.999];

const UNIT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosStats {
    pub mean_alpha_sq: f64,
    /// Sample variance of `α`.
    pub variance: f64,
    pub median_alpha: f64,
    /// `(level, value)` for each entry of [`CHAOS_LEVELS`].
    pub quantiles: Vec<(f64, f64)>,
    pub trials: u64,
    pub x: DenseVector,
    /// `α` per trial, in trial order.
    pub samples: Vec<f64>,
}

impl ChaosStats {
    pub fn quantile(&self, level: f64) -> Option<f64> {
        self.quantiles
            .iter()
            .find(|(l, _)| (*l - level).abs() < 1e-12)
            .map(|&(_, v)| v)
    }
}

/// Linear-interpolation quantile of sorted data (`(n-1)p` rule).
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Builds `template` with a fresh seed per trial (`Ω` frozen) and records
/// `α(x)`. Trial `t` uses seed `derive_seed(seed, t, Trial)`.
pub fn chaos_statistics(
    template: &ChainSpec,
    x: &DenseVector,
    trials: u64,
    seed: u64,
) -> Result<ChaosStats> {
    let norm = x.norm();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NotUnitNorm { norm });
    }
    if trials < 100 {
        return Err(Error::InvalidParameter(format!(
            "chaos statistics need at least 100 trials, got {trials}"
        )));
    }
    if x.len() != template.n {
        return Err(Error::LengthMismatch {
            expected: template.n,
            got: x.len(),
        });
    }
    let frozen = template.reseeded(template.seed)?;
    let samples = crate::par::map_indices(trials as usize, |t| -> Result<f64> {
        let spec = ChainSpec {
            seed: derive_seed(seed, t as u64, Role::Trial),
            ..frozen.clone()
        };
        let chain = spec.build()?;
        Ok(chain.apply(x, crate::transforms::Direction::Forward)?.norm())
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;

    let m = samples.len() as f64;
    let mean_alpha_sq = samples.iter().map(|a| a * a).sum::<f64>() / m;
    let mean = samples.iter().sum::<f64>() / m;
    let variance = samples.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let mut sorted = samples.clone();
    sorted.sort_by(f64::total_cmp);
    let quantiles: Vec<(f64, f64)> = CHAOS_LEVELS
        .iter()
        .map(|&p| (p, quantile(&sorted, p)))
        .collect();
    Ok(ChaosStats {
        mean_alpha_sq,
        variance,
        median_alpha: quantiles[0].1,
        quantiles,
        trials,
        x: x.clone(),
        samples,
    })
}
