//! Finite point configurations, their periodic tessellation, Palm samples and
//! correlation sums.
//!
//! Intervals are half-open `(a, b]` throughout, matching `ξ(0, x] ≥ n` in the
//! labeling of points.

mod correlation;
mod palm;
mod tessellation;

pub use correlation::{
    correlation_sum, correlation_sum_points, falling_factorial, falling_factorial_count,
    linear_statistic, mixed_moment, mixed_moment_by_correlations, polarized_product,
};
pub(crate) use correlation::check_disjoint;
pub use palm::{palm_samples, CenteredConfiguration};
pub use tessellation::{tessellate, TessellatedConfiguration};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Anything that can enumerate its points in a bounded range.
pub trait PointSource {
    /// Points `p` with `lo <= p <= hi`, in ascending order (with multiplicity).
    fn points_between(&self, lo: f64, hi: f64) -> Vec<f64>;

    /// Number of points in `(a, b]`.
    fn count_in_interval(&self, a: f64, b: f64) -> Result<usize>;
}

/// A finite non-decreasing sequence of reals lying in a window `(start, end]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfiguration {
    points: Vec<f64>,
    start: f64,
    end: f64,
}

impl PointConfiguration {
    /// Configuration on the window `(0, window_end]`.
    pub fn new(points: Vec<f64>, window_end: f64) -> Result<Self> {
        Self::with_window(points, 0.0, window_end)
    }

    /// Configuration on `(start, end]`. `start` may be `-inf` for a sequence
    /// known to have no further points below its first one.
    pub fn with_window(points: Vec<f64>, start: f64, end: f64) -> Result<Self> {
        if !(end.is_finite() && start < end) || start.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "window ({start}, {end}] is empty or not finite"
            )));
        }
        for (i, &p) in points.iter().enumerate() {
            if !(p > start && p <= end) {
                return Err(Error::OutsideWindow {
                    index: i,
                    value: p,
                    start,
                    end,
                });
            }
            if i > 0 && p < points[i - 1] {
                return Err(Error::Unsorted(i));
            }
        }
        Ok(Self { points, start, end })
    }

    /// Configuration spanning `(first - 1, last]`, for already sorted data.
    pub fn from_sorted(points: Vec<f64>) -> Result<Self> {
        match (points.first(), points.last()) {
            (Some(&a), Some(&b)) => Self::with_window(points, a - 1.0, b),
            _ => Err(Error::NoPoints),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn window_start(&self) -> f64 {
        self.start
    }

    pub fn window_end(&self) -> f64 {
        self.end
    }

    /// Index range of the points lying in `(a, b]`.
    pub fn index_range(&self, a: f64, b: f64) -> std::ops::Range<usize> {
        let lo = self.points.partition_point(|&p| p <= a);
        let hi = self.points.partition_point(|&p| p <= b);
        lo..hi.max(lo)
    }

    /// Points in the closed range `[lo, hi]` as a slice.
    pub fn slice_closed(&self, lo: f64, hi: f64) -> &[f64] {
        let i = self.points.partition_point(|&p| p < lo);
        let j = self.points.partition_point(|&p| p <= hi);
        &self.points[i..j.max(i)]
    }

    /// Number of points `<= x`.
    pub fn cumulative_count(&self, x: f64) -> usize {
        self.points.partition_point(|&p| p <= x)
    }

    /// Shift so that the location `s` maps to the origin.
    pub fn translate(&self, s: f64) -> Self {
        Self {
            points: self.points.iter().map(|&p| p - s).collect(),
            start: self.start - s,
            end: self.end - s,
        }
    }

    /// The first `n` points, on the window `(start, end]` given by the caller.
    pub fn truncated(&self, n: usize, start: f64, end: f64) -> Result<Self> {
        Self::with_window(self.points[..n.min(self.len())].to_vec(), start, end)
    }
}

impl PointSource for PointConfiguration {
    fn points_between(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.slice_closed(lo, hi).to_vec()
    }

    fn count_in_interval(&self, a: f64, b: f64) -> Result<usize> {
        if a > b {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(self.index_range(a, b).len())
    }
}
