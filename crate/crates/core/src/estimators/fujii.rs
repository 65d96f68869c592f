use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointproc::PointConfiguration;
use crate::unfold::UnfoldedSpectrum;

/// Which count increment is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum FujiiVariant {
    /// `N(t + A/log T) - N(t)` on raw ordinates, `t ∈ [T, 2T]`.
    Height { a: f64 },
    /// `#{j : γ̃_j - t ∈ I}` on unfolded points, `t ∈ (0, T]`.
    Unfolded { interval: (f64, f64) },
}

/// `(1/(hi - lo)) ∫_lo^hi #{p : t + a < p <= t + b}^k dt`, evaluated exactly.
///
/// The count is piecewise constant in `t`, stepping up at `p - b` and down at
/// `p - a`, so the integral is a finite sum over the merged breakpoints.
pub fn windowed_count_moment(
    points: &PointConfiguration,
    offset: (f64, f64),
    k: u32,
    window: (f64, f64),
) -> Result<f64> {
    let (a, b) = offset;
    let (lo, hi) = window;
    if !(a <= b) {
        return Err(Error::InvalidInterval { a, b });
    }
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("empty window ({lo}, {hi}]")));
    }
    if k == 0 {
        return Ok(1.0);
    }
    if hi + b > points.window_end() || lo + a < points.window_start() {
        return Err(Error::InsufficientData(format!(
            "counts over ({}, {}] leave the data window ({}, {}]",
            lo + a,
            hi + b,
            points.window_start(),
            points.window_end()
        )));
    }
    let relevant = points.slice_closed(lo + a, hi + b);
    let mut events: Vec<(f64, i64)> = Vec::with_capacity(2 * relevant.len());
    for &p in relevant {
        events.push((p - b, 1));
        events.push((p - a, -1));
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));
    // count at t = lo
    let mut count = points.index_range(lo + a, lo + b).len() as i64;
    let mut t = lo;
    let mut acc = 0.0;
    for (at, step) in events {
        if at <= lo {
            continue;
        }
        if at >= hi {
            break;
        }
        acc += (at - t) * (count as f64).powi(k as i32);
        t = at;
        count += step;
    }
    acc += (hi - t) * (count as f64).powi(k as i32);
    Ok(acc / (hi - lo))
}

/// Time-averaged `k`-th moment of the zero count in short windows.
pub fn fujii_moment(
    spectrum: &UnfoldedSpectrum,
    variant: FujiiVariant,
    k: u32,
    height: f64,
) -> Result<f64> {
    match variant {
        FujiiVariant::Height { a } => {
            if !(a > 0.0 && height > 1.0) {
                return Err(Error::InvalidParameter(format!("A = {a}, T = {height}")));
            }
            let h = a / height.ln();
            windowed_count_moment(spectrum.raw(), (0.0, h), k, (height, 2.0 * height))
        }
        FujiiVariant::Unfolded { interval } => {
            windowed_count_moment(spectrum.unfolded(), interval, k, (0.0, height))
        }
    }
}
