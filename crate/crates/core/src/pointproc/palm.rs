use serde::{Deserialize, Serialize};

use super::TessellatedConfiguration;
use crate::error::{Error, Result};

/// A configuration viewed from one of its points, truncated to `[-R, R]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenteredConfiguration {
    offsets: Vec<f64>,
    center: usize,
    radius: f64,
    weight: f64,
}

impl CenteredConfiguration {
    /// Sorted offsets in `[-radius, radius]`, including the atom at 0.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Position of the centering atom within [`offsets`](Self::offsets).
    pub fn center_index(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Probability weight of this sample in the empirical Palm law.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Offsets of the `k` points following the centering atom in index
    /// order, or `None` when they reach past the truncation radius.
    pub fn forward_offsets(&self, k: usize) -> Option<&[f64]> {
        let lo = self.center + 1;
        let hi = lo + k;
        if hi > self.offsets.len() {
            return None;
        }
        Some(&self.offsets[lo..hi])
    }
}

/// The empirical Palm samples `{c̆_j - c̆_n : |c̆_j - c̆_n| <= radius}`, one per
/// base index `n = 1..N`, each with weight `1/N`.
pub fn palm_samples(
    tess: &TessellatedConfiguration,
    radius: f64,
) -> Result<Vec<CenteredConfiguration>> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius {radius}")));
    }
    let n = tess.len_per_period();
    let weight = 1.0 / n as f64;
    Ok((1..=n as i64)
        .map(|i| {
            let c = tess.point(i);
            let mut below = Vec::new();
            let mut j = i - 1;
            loop {
                let d = tess.point(j) - c;
                if d < -radius {
                    break;
                }
                below.push(d);
                j -= 1;
            }
            below.reverse();
            let center = below.len();
            let mut offsets = below;
            offsets.push(0.0);
            let mut j = i + 1;
            loop {
                let d = tess.point(j) - c;
                if d > radius {
                    break;
                }
                offsets.push(d);
                j += 1;
            }
            CenteredConfiguration {
                offsets,
                center,
                radius,
                weight,
            }
        })
        .collect())
}
