use serde::{Deserialize, Serialize};

use super::EmpiricalDistribution;
use crate::error::{Error, Result};
use crate::pointproc::{palm_samples, PointConfiguration, TessellatedConfiguration};
use crate::unfold::UnfoldedSpectrum;

fn check_sizes(len: usize, k: usize, n: usize) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("K = {k}, N = {n}")));
    }
    if n + k > len {
        return Err(Error::InsufficientData(format!(
            "N + K = {} exceeds the {len} available points",
            n + k
        )));
    }
    Ok(())
}

fn direct_vectors(points: &[f64], k: usize, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (1..=k).map(|j| points[i + j] - points[i]).collect())
        .collect()
}

/// Law of `(γ̃_{n+1} - γ̃_n, …, γ̃_{n+K} - γ̃_n)` for `n` uniform in `1..=N`.
pub fn spacing_vectors(spectrum: &UnfoldedSpectrum, k: usize, n: usize) -> Result<EmpiricalDistribution> {
    let pts = spectrum.unfolded().points();
    check_sizes(pts.len(), k, n)?;
    Ok(EmpiricalDistribution::Samples {
        dimension: k,
        vectors: direct_vectors(pts, k, n),
    })
}

/// Comparison of the direct spacing-vector law with the one read off the
/// Palm samples of the tessellated first `N` points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PalmSpacingReport {
    pub k: usize,
    pub n: usize,
    /// Sup-distance between the two empirical joint CDFs.
    pub distance: f64,
    /// `K / N`.
    pub bound: f64,
    /// Vectors present in one law but not the other.
    pub differing: usize,
    /// `distance` is an upper bound rather than the exact supremum.
    pub distance_is_bound: bool,
}

impl PalmSpacingReport {
    pub fn passed(&self) -> bool {
        self.distance <= self.bound
    }
}

/// Largest grid searched for the exact supremum.
const MAX_SUP_GRID: usize = 1_000_000;

/// Tessellates the first `N` unfolded points with period `γ̃_{N+1} - γ̃_1`
/// and compares the Palm spacing law with the direct one.
pub fn palm_spacing_check(spectrum: &UnfoldedSpectrum, k: usize, n: usize) -> Result<PalmSpacingReport> {
    let pts = spectrum.unfolded().points();
    check_sizes(pts.len(), k, n)?;
    let period = pts[n] - pts[0];
    let gap = pts[n] - pts[n - 1];
    if !(gap > 0.0) {
        return Err(Error::InvalidParameter(
            "points N and N+1 coincide; no tessellation period fits".into(),
        ));
    }
    let start = pts[0] - 0.5 * gap;
    let base = PointConfiguration::with_window(pts[..n].to_vec(), start, start + period)?;
    let tess = TessellatedConfiguration::new(base)?;
    let radius = (1..=n as i64)
        .map(|i| tess.point(i + k as i64) - tess.point(i))
        .fold(0.0, f64::max);
    let palm: Vec<Vec<f64>> = palm_samples(&tess, radius)?
        .iter()
        .map(|c| {
            c.forward_offsets(k)
                .map(<[f64]>::to_vec)
                .ok_or_else(|| Error::InvalidParameter("Palm radius too small".into()))
        })
        .collect::<Result<_>>()?;
    let direct = direct_vectors(pts, k, n);
    let (plus, minus) = multiset_difference(direct, palm);
    let differing = plus.len() + minus.len();
    let grid_size = (differing + 1).checked_pow(k as u32);
    let (distance, distance_is_bound) = match grid_size {
        Some(g) if g <= MAX_SUP_GRID => (signed_orthant_sup(&plus, &minus, k) / n as f64, false),
        _ => (plus.len().max(minus.len()) as f64 / n as f64, true),
    };
    Ok(PalmSpacingReport {
        k,
        n,
        distance,
        bound: k as f64 / n as f64,
        differing,
        distance_is_bound,
    })
}

fn lex(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// Vectors of `a` not matched in `b`, and vice versa, matching exact equality.
fn multiset_difference(mut a: Vec<Vec<f64>>, mut b: Vec<Vec<f64>>) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    a.sort_by(|x, y| lex(x, y));
    b.sort_by(|x, y| lex(x, y));
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match lex(&a[i], &b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                only_a.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b.push(b[j].clone());
                j += 1;
            }
        }
    }
    only_a.extend(a.drain(i..));
    only_b.extend(b.drain(j..));
    (only_a, only_b)
}

/// `sup_x |#{v ∈ plus : v <= x} - #{v ∈ minus : v <= x}|`, attained on the
/// product grid of the vectors' own coordinates.
fn signed_orthant_sup(plus: &[Vec<f64>], minus: &[Vec<f64>], k: usize) -> f64 {
    if plus.is_empty() && minus.is_empty() {
        return 0.0;
    }
    let coords: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let mut c: Vec<f64> = plus.iter().chain(minus).map(|v| v[j]).collect();
            c.sort_by(f64::total_cmp);
            c.dedup();
            c
        })
        .collect();
    let mut best = 0i64;
    let mut idx = vec![0usize; k];
    loop {
        let x: Vec<f64> = idx.iter().enumerate().map(|(j, &i)| coords[j][i]).collect();
        let below = |v: &Vec<f64>| v.iter().zip(&x).all(|(a, b)| a <= b);
        let d = plus.iter().filter(|v| below(v)).count() as i64
            - minus.iter().filter(|v| below(v)).count() as i64;
        best = best.max(d.abs());
        let mut j = k;
        loop {
            if j == 0 {
                return best as f64;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < coords[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}
