use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::linalg;
use crate::error::{Error, Result};

/// Largest node count accepted by [`correlation_density`].
pub const MAX_DENSITY_NODES: usize = 8;

/// `S(x) = sin(πx) / (πx)`, with `S(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    let y = PI * x;
    if x.abs() < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 6.0 + y2 * y2 / 120.0
    } else {
        y.sin() / y
    }
}

/// The matrix `S(x_i - x_j)` for a list of nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    nodes: Vec<f64>,
    entries: Vec<f64>,
}

impl KernelMatrix {
    pub fn new(nodes: &[f64]) -> Self {
        let k = nodes.len();
        let mut entries = vec![0.0; k * k];
        for i in 0..k {
            entries[i * k + i] = 1.0;
            for j in 0..i {
                let s = sinc(nodes[i] - nodes[j]);
                entries[i * k + j] = s;
                entries[j * k + i] = s;
            }
        }
        Self {
            nodes: nodes.to_vec(),
            entries,
        }
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size() + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Unclamped determinant.
    pub fn determinant(&self) -> f64 {
        if self.size() == 0 {
            return 1.0;
        }
        linalg::det(&self.entries, self.size())
    }
}

/// `det[S(x_i - x_j)]`, the `k`-point correlation density of the sine process.
/// The raw determinant is returned; rounding can push it marginally outside `[0, 1]`.
pub fn correlation_density(nodes: &[f64]) -> Result<f64> {
    if nodes.len() > MAX_DENSITY_NODES {
        return Err(Error::ArityOutOfRange {
            arity: nodes.len(),
            max: MAX_DENSITY_NODES,
        });
    }
    Ok(KernelMatrix::new(nodes).determinant())
}

/// [`correlation_density`] clamped to `[0, 1]` for reporting.
pub fn correlation_density_clamped(nodes: &[f64]) -> Result<f64> {
    correlation_density(nodes).map(|d| d.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(1.0).abs() < 1e-16);
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-15);
        // the Taylor branch joins the direct formula smoothly
        let x = 0.999_999e-4;
        assert!((sinc(x) - (PI * x).sin() / (PI * x)).abs() < 1e-15);
        assert_eq!(sinc(-0.3), sinc(0.3));
    }

    #[test]
    fn densities() {
        assert_eq!(correlation_density(&[0.7]).unwrap(), 1.0);
        let d = correlation_density(&[0.0, 0.5]).unwrap();
        assert!((d - (1.0 - 4.0 / (PI * PI))).abs() < 1e-15);
        assert!(correlation_density(&[0.3, 0.3]).unwrap().abs() < 1e-15);
        assert!(correlation_density(&[0.0; 9]).is_err());
        assert_eq!(correlation_density(&[]).unwrap(), 1.0);
    }

    #[test]
    fn matrix_shape() {
        let m = KernelMatrix::new(&[0.0, 0.25, 1.0]);
        for i in 0..3 {
            assert_eq!(m.get(i, i), 1.0);
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert!(m.get(0, 2).abs() < 1e-16);
    }
}
