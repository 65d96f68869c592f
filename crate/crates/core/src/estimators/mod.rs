//! Empirical statistics of spectra: time-averaged correlation sums in three
//! normalizations, occupancy laws, spacing vectors and count moments.

mod correlation;
mod distribution;
mod fujii;
mod occupancy;
mod plan;
mod spacing;

pub use correlation::{
    corr_fixed_scaling, corr_unfolded, corr_varying_scaling, pair_correlation_histogram,
};
pub use distribution::{ks_distance, EmpiricalDistribution};
pub use fujii::{fujii_moment, windowed_count_moment, FujiiVariant};
pub use occupancy::{occupancy_distribution, Occupancy};
pub use plan::{average, pairwise_sum, AveragingPlan, Estimate, Sampler, DEFAULT_SAMPLES};
pub use spacing::{palm_spacing_check, spacing_vectors, PalmSpacingReport};

/// Default shoulder width for tent approximations of indicators.
pub const DEFAULT_SHOULDER: f64 = 0.01;
