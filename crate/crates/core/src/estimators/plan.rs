use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of `t` samples.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Midpoints of `M` equal cells.
    Grid,
    /// `M` independent uniform draws.
    MonteCarlo,
}

/// How a `t`-average over a window is approximated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AveragingPlan {
    pub window: (f64, f64),
    pub sampler: Sampler,
    pub samples: usize,
    pub seed: u64,
}

impl AveragingPlan {
    pub fn grid(window: (f64, f64), samples: usize) -> Self {
        Self {
            window,
            sampler: Sampler::Grid,
            samples,
            seed: 0,
        }
    }

    pub fn monte_carlo(window: (f64, f64), samples: usize, seed: u64) -> Self {
        Self {
            window,
            sampler: Sampler::MonteCarlo,
            samples,
            seed,
        }
    }

    /// Same sampler on another window.
    pub fn with_window(&self, window: (f64, f64)) -> Self {
        Self { window, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.window;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter(format!(
                "averaging window ({a}, {b}] is empty"
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidParameter("at least one sample required".into()));
        }
        Ok(())
    }

    /// Require the plan window to lie inside `[lo, hi]`.
    pub(crate) fn require_within(&self, lo: f64, hi: f64) -> Result<()> {
        self.validate()?;
        let (a, b) = self.window;
        if a < lo || b > hi {
            return Err(Error::InvalidParameter(format!(
                "averaging window ({a}, {b}] must lie within [{lo}, {hi}]"
            )));
        }
        Ok(())
    }

    pub fn sample_points(&self) -> Vec<f64> {
        let (a, b) = self.window;
        let m = self.samples;
        match self.sampler {
            Sampler::Grid => {
                let h = (b - a) / m as f64;
                (0..m).map(|i| a + (i as f64 + 0.5) * h).collect()
            }
            Sampler::MonteCarlo => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (0..m).map(|_| a + (b - a) * rng.random::<f64>()).collect()
            }
        }
    }
}

/// A `t`-average with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `√M`.
    pub std_error: f64,
    pub samples: usize,
    /// Samples whose query box was not covered by the data; they count as zero.
    pub skipped: usize,
}

impl Estimate {
    pub fn skipped_fraction(&self) -> f64 {
        self.skipped as f64 / self.samples as f64
    }

    /// `|a - b| / √(se_a² + se_b²)`.
    pub fn z_score(&self, other: &Estimate) -> f64 {
        let se = (self.std_error.powi(2) + other.std_error.powi(2)).sqrt();
        (self.mean - other.mean).abs() / se
    }

    /// Scale mean and error by a constant.
    pub fn scaled(&self, c: f64) -> Estimate {
        Estimate {
            mean: c * self.mean,
            std_error: c.abs() * self.std_error,
            ..*self
        }
    }
}

/// Pairwise summation with a split point fixed by length only, so the
/// rounding pattern does not depend on how the values were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Evaluate `g` at every sample of `plan` in parallel and average. `Ok(None)`
/// marks a skipped sample.
pub fn average<G>(plan: &AveragingPlan, g: G) -> Result<Estimate>
where
    G: Fn(f64) -> Result<Option<f64>> + Sync,
{
    plan.validate()?;
    let ts = plan.sample_points();
    let results: Vec<Option<f64>> = ts.par_iter().map(|&t| g(t)).collect::<Result<_>>()?;
    let skipped = results.iter().filter(|v| v.is_none()).count();
    let values: Vec<f64> = results.into_iter().map(|v| v.unwrap_or(0.0)).collect();
    Ok(summarize(&values, skipped))
}

pub(crate) fn summarize(values: &[f64], skipped: usize) -> Estimate {
    let m = values.len() as f64;
    let mean = pairwise_sum(values) / m;
    let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = if values.len() > 1 {
        pairwise_sum(&dev) / (m - 1.0)
    } else {
        0.0
    };
    Estimate {
        mean,
        std_error: (var / m).sqrt(),
        samples: values.len(),
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_midpoints() {
        let p = AveragingPlan::grid((0.0, 1.0), 4);
        assert_eq!(p.sample_points(), vec![0.125, 0.375, 0.625, 0.875]);
    }

    #[test]
    fn monte_carlo_reproducible_and_in_window() {
        let p = AveragingPlan::monte_carlo((2.0, 3.0), 100, 9);
        let a = p.sample_points();
        assert_eq!(a, p.sample_points());
        assert!(a.iter().all(|&t| (2.0..3.0).contains(&t)));
        assert_ne!(a, AveragingPlan { seed: 10, ..p }.sample_points());
    }

    #[test]
    fn validation() {
        assert!(AveragingPlan::grid((1.0, 1.0), 3).validate().is_err());
        assert!(AveragingPlan::grid((0.0, 1.0), 0).validate().is_err());
    }

    #[test]
    fn averages_and_skips() {
        let p = AveragingPlan::grid((0.0, 1.0), 10);
        let e = average(&p, |t| Ok(if t < 0.5 { None } else { Some(2.0) })).unwrap();
        assert_eq!(e.skipped, 5);
        assert_eq!(e.mean, 1.0);
    }

    #[test]
    fn pairwise_sum_exact_on_integers() {
        let v: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 500_500.0);
    }
}
