use super::plan::{average, AveragingPlan, Estimate};
use super::EmpiricalDistribution;
use crate::error::{Error, Result};
use crate::pointproc::{correlation_sum_points, PointConfiguration};
use crate::testfn::TestFunction;
use crate::unfold::{DensityScale, UnfoldedSpectrum};

fn check_query(k: usize, f: &TestFunction) -> Result<()> {
    if f.arity() != k {
        return Err(Error::InvalidParameter(format!(
            "test function has arity {} but k = {k}",
            f.arity()
        )));
    }
    crate::testfn::check_arity(k)
}

/// Correlation sum of `{scale · (p - t)}` against `f`, or `None` when the data
/// do not cover the query box.
fn dilated_sum(
    points: &PointConfiguration,
    f: &TestFunction,
    t: f64,
    scale: f64,
) -> Result<Option<f64>> {
    let half = f.reach() / scale;
    let (lo, hi) = (t - half, t + half);
    if lo < points.window_start() || hi > points.window_end() {
        return Ok(None);
    }
    let mapped: Vec<f64> = points
        .slice_closed(lo, hi)
        .iter()
        .map(|&p| scale * (p - t))
        .collect();
    correlation_sum_points(&mapped, f).map(Some)
}

fn insufficient(what: &str, need: f64, have: f64) -> Error {
    Error::InsufficientData(format!("{what}: need data up to {need}, table ends at {have}"))
}

/// Form (ii): `t ∈ [T, 2T]`, fixed dilation `L(T)`.
pub fn corr_fixed_scaling(
    raw: &PointConfiguration,
    k: usize,
    f: &TestFunction,
    height: f64,
    plan: &AveragingPlan,
    scale: DensityScale,
) -> Result<Estimate> {
    check_query(k, f)?;
    plan.require_within(height, 2.0 * height)?;
    let l = scale.eval(height)?;
    let half = f.reach() / l;
    let (a, b) = plan.window;
    if b + half > raw.window_end() {
        return Err(insufficient("fixed scaling", b + half, raw.window_end()));
    }
    if a - half < raw.window_start() {
        return Err(Error::InsufficientData(format!(
            "fixed scaling: data start at {} but the window needs {}",
            raw.window_start(),
            a - half
        )));
    }
    average(plan, |t| dilated_sum(raw, f, t, l))
}

/// Form (i): `t ∈ (0, T]`, dilation `L(t)` per sample. Samples where `L` is
/// undefined or the box reaches below the data are skipped.
pub fn corr_varying_scaling(
    raw: &PointConfiguration,
    k: usize,
    f: &TestFunction,
    height: f64,
    plan: &AveragingPlan,
    scale: DensityScale,
) -> Result<Estimate> {
    check_query(k, f)?;
    plan.require_within(0.0, height)?;
    let top = plan.window.1;
    let need = top + f.reach() / scale.eval(top)?;
    if need > raw.window_end() {
        return Err(insufficient("varying scaling", need, raw.window_end()));
    }
    average(plan, |t| {
        if t <= scale.lower_limit() {
            return Ok(None);
        }
        dilated_sum(raw, f, t, scale.eval(t)?)
    })
}

/// Form (iii): `t ∈ (0, T]` on the unfolded points, no dilation.
pub fn corr_unfolded(
    spectrum: &UnfoldedSpectrum,
    k: usize,
    f: &TestFunction,
    height: f64,
    plan: &AveragingPlan,
) -> Result<Estimate> {
    check_query(k, f)?;
    plan.require_within(0.0, height)?;
    let u = spectrum.unfolded();
    let need = plan.window.1 + f.reach();
    if need > u.window_end() {
        return Err(insufficient("unfolded", need, u.window_end()));
    }
    average(plan, |t| dilated_sum(u, f, t, 1.0))
}

/// Separation histogram of unfolded points: bin `(e_i, e_{i+1}]` holds
/// `(1/T) #{(m, n) : γ̃_n ∈ (0, T], γ̃_m - γ̃_n ∈ bin}`, an estimate of
/// `∫_bin (1 - S(u)²) du`.
pub fn pair_correlation_histogram(
    spectrum: &UnfoldedSpectrum,
    height: f64,
    bin_width: f64,
    max_sep: f64,
) -> Result<EmpiricalDistribution> {
    if !(bin_width > 0.0 && max_sep > 0.0 && height > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bin width {bin_width}, max separation {max_sep}, height {height}"
        )));
    }
    let u = spectrum.unfolded();
    if height + max_sep > u.window_end() {
        return Err(insufficient("pair correlation", height + max_sep, u.window_end()));
    }
    let bins = (max_sep / bin_width - 1e-9).ceil() as usize;
    let edges: Vec<f64> = (0..=bins)
        .map(|i| (i as f64 * bin_width).min(max_sep))
        .collect();
    let mut counts = vec![0u64; bins];
    let pts = u.points();
    let base = u.index_range(0.0, height);
    for n in base.clone() {
        let x = pts[n];
        for &y in &pts[n + 1..] {
            let d = y - x;
            if d > max_sep {
                break;
            }
            if d <= 0.0 {
                continue;
            }
            // (e_i, e_{i+1}] convention
            let mut i = ((d / bin_width).ceil() as usize).saturating_sub(1).min(bins - 1);
            while i > 0 && d <= edges[i] {
                i -= 1;
            }
            while i + 1 < bins && d > edges[i + 1] {
                i += 1;
            }
            counts[i] += 1;
        }
    }
    Ok(EmpiricalDistribution::Histogram {
        edges,
        masses: counts.iter().map(|&c| c as f64 / height).collect(),
        sample_count: base.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::Profile;

    fn lattice(n: usize) -> UnfoldedSpectrum {
        let pts: Vec<f64> = (0..n).map(|i| 0.25 + i as f64).collect();
        UnfoldedSpectrum::synthetic(PointConfiguration::new(pts, n as f64).unwrap())
    }

    #[test]
    fn empty_box_gives_zero() {
        let s = lattice(100);
        let f = TestFunction::single(Profile::tent(0.0, 0.1));
        // the grid keeps t - 0.25 at odd multiples of 0.5, away from the lattice
        let plan = AveragingPlan::grid((0.0, 50.0), 50);
        let e = corr_unfolded(&s, 1, &f, 50.0, &plan).unwrap();
        assert_eq!(e.mean, 0.0);
    }

    #[test]
    fn arity_must_match() {
        let s = lattice(100);
        let f = TestFunction::single(Profile::tent(0.0, 0.5));
        let plan = AveragingPlan::grid((1.0, 50.0), 10);
        assert!(corr_unfolded(&s, 2, &f, 50.0, &plan).is_err());
    }

    #[test]
    fn lattice_histogram_spikes_at_integers() {
        let s = lattice(200);
        let h = pair_correlation_histogram(&s, 100.0, 0.1, 3.0).unwrap();
        if let EmpiricalDistribution::Histogram { edges, masses, .. } = h {
            assert_eq!(edges.len(), 31);
            for (i, m) in masses.iter().enumerate() {
                // separation 1 falls in (0.9, 1.0], i.e. bin 9
                let expected = if [9, 19, 29].contains(&i) { 1.0 } else { 0.0 };
                assert!((m - expected).abs() < 1e-12, "bin {i}: {m}");
            }
        } else {
            panic!("expected a histogram");
        }
    }
}
