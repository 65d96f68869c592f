use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An estimated law: a binned measure, a pmf over count vectors, or a
/// uniformly weighted sample of real vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EmpiricalDistribution {
    /// Bin `i` is `(edges[i], edges[i+1]]`. Masses are a measure estimate and
    /// need not sum to one (a pair-correlation histogram counts pairs per unit length).
    Histogram {
        edges: Vec<f64>,
        masses: Vec<f64>,
        sample_count: usize,
    },
    /// Probability of each observed count vector, sorted by vector.
    Pmf {
        masses: Vec<(Vec<usize>, f64)>,
        sample_count: usize,
    },
    /// Vectors of common dimension, each with weight `1 / len`.
    Samples {
        dimension: usize,
        vectors: Vec<Vec<f64>>,
    },
}

impl EmpiricalDistribution {
    pub fn total_mass(&self) -> f64 {
        match self {
            EmpiricalDistribution::Histogram { masses, .. } => masses.iter().sum(),
            EmpiricalDistribution::Pmf { masses, .. } => masses.iter().map(|(_, m)| m).sum(),
            EmpiricalDistribution::Samples { vectors, .. } => {
                if vectors.is_empty() {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    pub fn sample_count(&self) -> usize {
        match self {
            EmpiricalDistribution::Histogram { sample_count, .. }
            | EmpiricalDistribution::Pmf { sample_count, .. } => *sample_count,
            EmpiricalDistribution::Samples { vectors, .. } => vectors.len(),
        }
    }

    /// Builds a pmf from observed count vectors.
    pub fn pmf_from_counts(mut observations: Vec<Vec<usize>>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::InsufficientData("no observations".into()));
        }
        let n = observations.len();
        observations.sort();
        let mut masses: Vec<(Vec<usize>, usize)> = Vec::new();
        for v in observations {
            match masses.last_mut() {
                Some((last, c)) if *last == v => *c += 1,
                _ => masses.push((v, 1)),
            }
        }
        Ok(EmpiricalDistribution::Pmf {
            masses: masses
                .into_iter()
                .map(|(v, c)| (v, c as f64 / n as f64))
                .collect(),
            sample_count: n,
        })
    }

    /// Mass of one count vector in a pmf (0 if absent or not a pmf).
    pub fn pmf_mass(&self, key: &[usize]) -> f64 {
        match self {
            EmpiricalDistribution::Pmf { masses, .. } => masses
                .binary_search_by(|(v, _)| v.as_slice().cmp(key))
                .map(|i| masses[i].1)
                .unwrap_or(0.0),
            _ => 0.0,
        }
    }

    /// Per-coordinate means of a pmf or sample law.
    pub fn marginal_means(&self) -> Vec<f64> {
        match self {
            EmpiricalDistribution::Pmf { masses, .. } => {
                let k = masses.first().map_or(0, |(v, _)| v.len());
                (0..k)
                    .map(|j| masses.iter().map(|(v, m)| v[j] as f64 * m).sum())
                    .collect()
            }
            EmpiricalDistribution::Samples { dimension, vectors } => {
                let n = vectors.len() as f64;
                (0..*dimension)
                    .map(|j| vectors.iter().map(|v| v[j]).sum::<f64>() / n)
                    .collect()
            }
            EmpiricalDistribution::Histogram { .. } => Vec::new(),
        }
    }

    /// Empirical CDF of coordinate `j` of a sample law at `x`.
    pub fn marginal_cdf(&self, j: usize, x: f64) -> f64 {
        match self {
            EmpiricalDistribution::Samples { vectors, .. } if !vectors.is_empty() => {
                vectors.iter().filter(|v| v[j] <= x).count() as f64 / vectors.len() as f64
            }
            _ => 0.0,
        }
    }
}

/// Kolmogorov–Smirnov distance between the empirical law of `samples` and a
/// continuous CDF. `samples` is sorted in place.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_masses_sum_to_one() {
        let d = EmpiricalDistribution::pmf_from_counts(vec![vec![1], vec![0], vec![1], vec![2]])
            .unwrap();
        assert!((d.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(d.pmf_mass(&[1]), 0.5);
        assert_eq!(d.pmf_mass(&[3]), 0.0);
        assert_eq!(d.marginal_means(), vec![1.0]);
        assert_eq!(d.sample_count(), 4);
    }

    #[test]
    fn ks_of_uniform_grid() {
        let mut xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let d = ks_distance(&mut xs, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-12);
    }
}
