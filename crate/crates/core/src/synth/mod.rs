//! Synthetic spectra with known limiting statistics.

mod eigen;
mod rng;

pub use eigen::tridiagonal_eigenvalues;
pub use rng::{RngAlgorithm, RngSpec};

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pointproc::PointConfiguration;
use crate::unfold::{Provenance, UnfoldedSpectrum};

/// Unit-rate Poisson points on `(0, T]` from exponential gaps.
pub fn poisson_spectrum<R: Rng + ?Sized>(t: f64, rng: &mut R) -> Result<PointConfiguration> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("length {t}")));
    }
    let mut points = Vec::with_capacity(t as usize + 16);
    let mut x: f64 = rng.sample(Exp1);
    while x <= t {
        points.push(x);
        x += rng.sample::<f64, _>(Exp1);
    }
    PointConfiguration::new(points, t)
}

/// The shifted lattice `{u, u + 1, …} ∩ (0, T]`. The offset `u` is a random
/// multiple of `2^-32` in `(0, 1]`, so every point is exactly representable.
pub fn lattice_spectrum<R: Rng + ?Sized>(t: u64, rng: &mut R) -> Result<PointConfiguration> {
    if t == 0 {
        return Err(Error::InvalidParameter("lattice length must be >= 1".into()));
    }
    let u = (rng.random::<u32>() as f64 + 1.0) / 4_294_967_296.0;
    let points: Vec<f64> = (0..t).map(|k| u + k as f64).filter(|&p| p <= t as f64).collect();
    PointConfiguration::new(points, t as f64)
}

/// A chi-distributed variate. Integer degrees of freedom use a sum of
/// squared standard normals; other values use the Wilson–Hilferty cube.
pub fn sample_chi<R: Rng + ?Sized>(df: f64, rng: &mut R) -> f64 {
    if df <= 0.0 {
        return 0.0;
    }
    if df.fract() == 0.0 {
        let mut s = 0.0;
        for _ in 0..df as u64 {
            let z: f64 = rng.sample(StandardNormal);
            s += z * z;
        }
        return s.sqrt();
    }
    let z: f64 = rng.sample(StandardNormal);
    let a = 2.0 / (9.0 * df);
    let cube = (1.0 - a + z * a.sqrt()).max(0.0);
    (df * cube * cube * cube).sqrt()
}

/// Smallest and largest supported matrix dimensions for the GUE surrogate.
pub const GUE_MIN_DIM: usize = 50;
pub const GUE_MAX_DIM: usize = 4000;

/// Eigenvalues of an `n × n` GUE matrix via the tridiagonal model: diagonal
/// `N(0, 2)/2`, off-diagonal `χ_{2(n-i)}/2`. The spectrum fills `[-√(2n), √(2n)]`.
pub fn gue_eigenvalues<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix dimension 0".into()));
    }
    let mut diag = Vec::with_capacity(n);
    for _ in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        diag.push(z * std::f64::consts::SQRT_2 * 0.5);
    }
    let mut off = Vec::with_capacity(n - 1);
    for i in 1..n {
        off.push(0.5 * sample_chi(2.0 * (n - i) as f64, rng));
    }
    tridiagonal_eigenvalues(&diag, &off)
}

/// Integrated semicircle law on `[-1, 1]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -1.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    (x * (1.0 - x * x).sqrt() + x.asin()) / PI + 0.5
}

/// GUE bulk spectrum: the central half of the eigenvalues, unfolded with
/// `n F_sc(λ / √(2n))`.
pub fn gue_unfolded_spectrum<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnfoldedSpectrum> {
    if !(GUE_MIN_DIM..=GUE_MAX_DIM).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "matrix dimension {n} outside [{GUE_MIN_DIM}, {GUE_MAX_DIM}]"
        )));
    }
    let ev = gue_eigenvalues(n, rng)?;
    let radius = (2.0 * n as f64).sqrt();
    let unfold = |x: f64| n as f64 * semicircle_cdf(x / radius);
    let lo = n / 4;
    let hi = n - n / 4;
    let raw: Vec<f64> = ev[lo..hi].to_vec();
    let unfolded: Vec<f64> = raw.iter().map(|&x| unfold(x)).collect();
    // the window opens at the eigenvalue just below the kept block
    let raw_start = ev[lo - 1];
    let raw_cfg = PointConfiguration::with_window(raw, raw_start, ev[hi - 1])?;
    let unf_cfg = PointConfiguration::with_window(
        unfolded,
        unfold(raw_start),
        unfold(ev[hi - 1]),
    )?;
    UnfoldedSpectrum::new(raw_cfg, unf_cfg, Provenance::Gue)
}

/// `count` independent GUE bulk spectra, matrix `i` drawn from substream `i`.
pub fn gue_batch(n: usize, count: usize, spec: RngSpec) -> Result<Vec<UnfoldedSpectrum>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| gue_unfolded_spectrum(n, &mut spec.substream(i)))
        .collect()
}
