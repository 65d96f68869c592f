//! Reference quantities of the sine-kernel determinantal process.

mod fredholm;
pub mod kernel;
pub mod linalg;
pub mod quadrature;
mod series;

pub use fredholm::{
    fredholm_det_gap, gap_density_p2, gap_determinant, gap_determinant_with_order, spacing_cdf,
    spacing_mean, GapDeterminant, SpacingTable, FREDHOLM_TOL, MAX_GAP_LENGTH, P2_STEP,
};
pub use kernel::{
    correlation_density, correlation_density_clamped, sinc, KernelMatrix, MAX_DENSITY_NODES,
};
pub use quadrature::QuadratureRule;
pub use series::{
    correlation_integral, occupation_probability, tail_bound_check, Occupation, TailReport,
    CORRELATION_INTEGRAL_TOL, MAX_SERIES_DEGREE, OCCUPATION_TAIL_TOL,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One row of the exported reference table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineReferenceRow {
    pub t: f64,
    pub gap_det: f64,
    pub p2: f64,
    pub cdf: f64,
}

/// Gap determinant, spacing density and spacing CDF on `start, start + step, …, end`.
pub fn sine_reference_table(start: f64, end: f64, step: f64) -> Result<Vec<SineReferenceRow>> {
    if !(step > 0.0) || end < start {
        return Err(crate::Error::InvalidParameter(format!(
            "grid {start}..{end} step {step}"
        )));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    let mut rows = Vec::with_capacity(n + 1);
    let mut cdf = if start > 0.0 { spacing_cdf(start)? } else { 0.0 };
    let mut prev = start;
    for i in 0..=n {
        let t = start + i as f64 * step;
        if i > 0 {
            cdf += spacing_cdf_increment(prev, t)?;
        }
        prev = t;
        rows.push(SineReferenceRow {
            t,
            gap_det: fredholm_det_gap(t)?,
            p2: gap_density_p2(t)?,
            cdf,
        });
    }
    Ok(rows)
}

fn spacing_cdf_increment(a: f64, b: f64) -> Result<f64> {
    fredholm::integrate_density(a, b)
}
