//! The Riemann–Siegel theta function, unfolding of ordinates and the
//! diagnostics of the rescaling conditions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointproc::PointConfiguration;

/// Smallest height accepted by the asymptotic theta series.
pub const THETA_MIN: f64 = 10.0;

/// Stirling correction coefficients `c_k` of `θ(t) ∋ c_k / t^{2k-1}`.
const THETA_CORRECTIONS: [f64; 5] = [
    1.0 / 48.0,
    7.0 / 5760.0,
    31.0 / 80640.0,
    127.0 / 430080.0,
    511.0 / 1216512.0,
];

/// `θ(t) = Im log Γ(1/4 + it/2) - (t/2) log π` via its Stirling expansion.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !(t >= THETA_MIN) {
        return Err(Error::BelowSupportedRange { t, min: THETA_MIN });
    }
    Ok(theta_series(t))
}

fn theta_series(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    for c in THETA_CORRECTIONS.iter().rev() {
        corr = corr * inv2 + c;
    }
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + corr * inv
}

/// `θ(t) / π`, the smooth part of the zero counting function minus one.
pub fn theta_over_pi(t: f64) -> Result<f64> {
    riemann_siegel_theta(t).map(|v| v / PI)
}

/// `L(t) = log(t) / 2π`.
#[allow(non_snake_case)]
pub fn density_L(t: f64) -> Result<f64> {
    DensityScale::LogOverTwoPi.eval(t)
}

/// Choice of the local density `L(t)` used to dilate raw ordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum DensityScale {
    /// `log(t) / 2π`.
    #[default]
    LogOverTwoPi,
    /// `log(t / 2π) / 2π`, the derivative of the smooth zero count.
    SmoothCount,
    /// A constant density, for synthetic spectra.
    Constant(f64),
}

impl DensityScale {
    pub fn eval(&self, t: f64) -> Result<f64> {
        match *self {
            DensityScale::LogOverTwoPi => {
                if !(t > 1.0) {
                    return Err(Error::BelowSupportedRange { t, min: 1.0 });
                }
                Ok(t.ln() / (2.0 * PI))
            }
            DensityScale::SmoothCount => {
                if !(t > 2.0 * PI) {
                    return Err(Error::BelowSupportedRange { t, min: 2.0 * PI });
                }
                Ok((t / (2.0 * PI)).ln() / (2.0 * PI))
            }
            DensityScale::Constant(c) => {
                if !(c > 0.0 && c.is_finite()) {
                    return Err(Error::InvalidParameter(format!("density {c}")));
                }
                Ok(c)
            }
        }
    }

    /// Smallest `t` at which [`eval`](Self::eval) succeeds (exclusive).
    pub fn lower_limit(&self) -> f64 {
        match self {
            DensityScale::LogOverTwoPi => 1.0,
            DensityScale::SmoothCount => 2.0 * PI,
            DensityScale::Constant(_) => f64::NEG_INFINITY,
        }
    }
}

/// Where a spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Zeta,
    Gue,
    Synthetic,
}

/// Raw ordinates together with their unit-density rescaling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnfoldedSpectrum {
    raw: PointConfiguration,
    unfolded: PointConfiguration,
    provenance: Provenance,
}

impl UnfoldedSpectrum {
    pub fn new(
        raw: PointConfiguration,
        unfolded: PointConfiguration,
        provenance: Provenance,
    ) -> Result<Self> {
        if raw.len() != unfolded.len() {
            return Err(Error::InvalidParameter(format!(
                "{} raw points but {} unfolded",
                raw.len(),
                unfolded.len()
            )));
        }
        Ok(Self {
            raw,
            unfolded,
            provenance,
        })
    }

    /// A spectrum that is already at unit density; raw and unfolded coincide.
    pub fn synthetic(points: PointConfiguration) -> Self {
        Self {
            raw: points.clone(),
            unfolded: points,
            provenance: Provenance::Synthetic,
        }
    }

    pub fn raw(&self) -> &PointConfiguration {
        &self.raw
    }

    pub fn unfolded(&self) -> &PointConfiguration {
        &self.unfolded
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// The first `n` points of both sequences, windows closed at the `n`-th point.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        let n = n.min(self.len());
        if n == 0 {
            return Err(Error::NoPoints);
        }
        let raw = self.raw.truncated(n, self.raw.window_start(), self.raw.points()[n - 1])?;
        let unfolded = self.unfolded.truncated(
            n,
            self.unfolded.window_start(),
            self.unfolded.points()[n - 1],
        )?;
        Self::new(raw, unfolded, self.provenance)
    }
}

/// Unfold ordinates with `γ ↦ θ(γ)/π`.
///
/// The unfolded window starts at `θ(max(s, 10))/π` for a raw window `(s, T]`.
pub fn unfold(raw: &PointConfiguration) -> Result<UnfoldedSpectrum> {
    let values = raw
        .points()
        .iter()
        .map(|&g| theta_over_pi(g))
        .collect::<Result<Vec<_>>>()?;
    let start = theta_series(raw.window_start().max(THETA_MIN)) / PI;
    let end = theta_over_pi(raw.window_end())?;
    let unfolded = PointConfiguration::with_window(values, start, end)?;
    UnfoldedSpectrum::new(raw.clone(), unfolded, Provenance::Zeta)
}

/// `S(t) = N(t) - θ(t)/π - 1` with `N` the empirical count of ordinates `<= t`.
#[allow(non_snake_case)]
pub fn fluctuation_S(t: f64, raw: &PointConfiguration) -> Result<f64> {
    if t > raw.window_end() || t <= raw.window_start() {
        return Err(Error::InsufficientData(format!(
            "height {t} outside the table range ({}, {}]",
            raw.window_start(),
            raw.window_end()
        )));
    }
    let n = raw.cumulative_count(t) as f64;
    Ok(n - theta_over_pi(t)? - 1.0)
}

/// Diagnostics of the rescaling `φ = θ/π` at one height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RespacingRow {
    pub t: f64,
    /// `|φ(t) / (t L(t)) - 1|`.
    pub phi_deviation: f64,
    /// `|t Φ'(t) / Φ(t)|` with `Φ(t) = φ(t)/t`.
    pub log_derivative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RespacingReport {
    pub rows: Vec<RespacingRow>,
    pub max_phi_deviation: f64,
    pub max_log_derivative: f64,
    /// Both diagnostics strictly decrease along the grid.
    pub decreasing: bool,
}

fn big_phi(t: f64) -> Result<f64> {
    Ok(theta_over_pi(t)? / t)
}

/// Relative finite-difference step for `Φ'`.
pub const RESPACING_STEP: f64 = 1e-4;

/// Checks `φ(t) ∼ t L(t)` and `Φ'/Φ = o(1/t)` for `φ = θ/π`, `L = log t / 2π`.
pub fn verify_respacing_conditions(grid: &[f64]) -> Result<RespacingReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("grid must be increasing".into()));
    }
    if grid[0] < 100.0 {
        return Err(Error::BelowSupportedRange {
            t: grid[0],
            min: 100.0,
        });
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &t in grid {
        let phi = theta_over_pi(t)?;
        let phi_deviation = (phi / (t * density_L(t)?) - 1.0).abs();
        let h = t * RESPACING_STEP;
        let diff = |h: f64| -> Result<f64> { Ok((big_phi(t + h)? - big_phi(t - h)?) / (2.0 * h)) };
        let d = (4.0 * diff(h / 2.0)? - diff(h)?) / 3.0;
        let log_derivative = (t * d / big_phi(t)?).abs();
        rows.push(RespacingRow {
            t,
            phi_deviation,
            log_derivative,
        });
    }
    let decreasing = rows.windows(2).all(|w| {
        w[1].phi_deviation < w[0].phi_deviation && w[1].log_derivative < w[0].log_derivative
    });
    Ok(RespacingReport {
        max_phi_deviation: rows.iter().map(|r| r.phi_deviation).fold(0.0, f64::max),
        max_log_derivative: rows.iter().map(|r| r.log_derivative).fold(0.0, f64::max),
        rows,
        decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn theta_low_zeros() {
        assert_abs_diff_eq!(theta_over_pi(14.134_725_142).unwrap(), -0.550_253, epsilon = 1e-5);
        assert_abs_diff_eq!(theta_over_pi(21.022_039_639).unwrap(), 0.570_211, epsilon = 1e-5);
        assert!(matches!(
            riemann_siegel_theta(9.9),
            Err(Error::BelowSupportedRange { .. })
        ));
    }

    #[test]
    fn density_function() {
        assert_abs_diff_eq!(density_L(std::f64::consts::E).unwrap(), 1.0 / (2.0 * PI), epsilon = 1e-16);
        let r = density_L(2e6).unwrap() / density_L(1e6).unwrap();
        assert!((1.0..1.06).contains(&r));
        assert!(density_L(1.0).is_err());
        assert!(DensityScale::Constant(0.0).eval(5.0).is_err());
    }

    #[test]
    fn fluctuation_below_first_zero() {
        let raw = PointConfiguration::new(vec![14.134_725_142, 21.022_039_639], 22.0).unwrap();
        let s = fluctuation_S(14.0, &raw).unwrap();
        assert_abs_diff_eq!(s, -0.45, epsilon = 0.02);
        let jump = fluctuation_S(14.134_725_142, &raw).unwrap()
            - fluctuation_S(14.134_725_141, &raw).unwrap();
        assert_abs_diff_eq!(jump, 1.0, epsilon = 1e-6);
        assert!(matches!(fluctuation_S(23.0, &raw), Err(Error::InsufficientData(_))));
    }
}
