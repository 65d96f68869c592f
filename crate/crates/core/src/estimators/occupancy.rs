use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::AveragingPlan;
use super::EmpiricalDistribution;
use crate::error::{Error, Result};
use crate::unfold::UnfoldedSpectrum;

/// Joint law of `(#{n : γ̃_n - t ∈ I_j})_j` over the `t`-samples of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Occupancy {
    pub distribution: EmpiricalDistribution,
    pub marginal_means: Vec<f64>,
    /// Samples dropped because the intervals left the data window.
    pub skipped: usize,
}

/// Empirical occupancy law for half-open intervals `(a_j, b_j]`, `t` drawn from `plan` within `(0, T]`.
pub fn occupancy_distribution(
    spectrum: &UnfoldedSpectrum,
    intervals: &[(f64, f64)],
    height: f64,
    plan: &AveragingPlan,
) -> Result<Occupancy> {
    if intervals.is_empty() {
        return Err(Error::InvalidParameter("no intervals".into()));
    }
    for &(a, b) in intervals {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::InvalidInterval { a, b });
        }
    }
    plan.require_within(0.0, height)?;
    let u = spectrum.unfolded();
    let lo = intervals.iter().map(|i| i.0).fold(f64::INFINITY, f64::min);
    let hi = intervals.iter().map(|i| i.1).fold(f64::NEG_INFINITY, f64::max);
    if plan.window.1 + hi > u.window_end() {
        return Err(Error::InsufficientData(format!(
            "occupancy: need data up to {}, spectrum ends at {}",
            plan.window.1 + hi,
            u.window_end()
        )));
    }
    let ts = plan.sample_points();
    let observed: Vec<Option<Vec<usize>>> = ts
        .par_iter()
        .map(|&t| {
            if t + lo < u.window_start() {
                return None;
            }
            Some(
                intervals
                    .iter()
                    .map(|&(a, b)| u.index_range(t + a, t + b).len())
                    .collect(),
            )
        })
        .collect();
    let skipped = observed.iter().filter(|o| o.is_none()).count();
    let kept: Vec<Vec<usize>> = observed.into_iter().flatten().collect();
    let distribution = EmpiricalDistribution::pmf_from_counts(kept)?;
    let marginal_means = distribution.marginal_means();
    Ok(Occupancy {
        distribution,
        marginal_means,
        skipped,
    })
}
