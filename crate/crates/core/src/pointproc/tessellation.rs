use serde::{Deserialize, Serialize};

use super::{PointConfiguration, PointSource};
use crate::error::{Error, Result};

/// Periodic extension of a configuration on `(s, s + T]`:
/// `c̆_n = c_m + rT` for `n = m + rN`, `1 <= m <= N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TessellatedConfiguration {
    base: PointConfiguration,
    period: f64,
}

/// Tessellate a configuration by translations of its window length.
pub fn tessellate(config: &PointConfiguration) -> Result<TessellatedConfiguration> {
    TessellatedConfiguration::new(config.clone())
}

impl TessellatedConfiguration {
    pub fn new(base: PointConfiguration) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::NoPoints);
        }
        let period = base.window_end() - base.window_start();
        if !period.is_finite() {
            return Err(Error::InvalidParameter(
                "tessellation needs a bounded window".into(),
            ));
        }
        Ok(Self { base, period })
    }

    pub fn base(&self) -> &PointConfiguration {
        &self.base
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Number of points per period.
    pub fn len_per_period(&self) -> usize {
        self.base.len()
    }

    /// The point `c̆_j` (1-based index, any integer).
    pub fn point(&self, j: i64) -> f64 {
        let n = self.base.len() as i64;
        let m = (j - 1).rem_euclid(n) as usize;
        let r = (j - 1).div_euclid(n);
        self.base.points()[m] + r as f64 * self.period
    }

    /// Largest index `j` with `c̆_j <= x`.
    pub fn cumulative_index(&self, x: f64) -> i64 {
        let n = self.base.len() as i64;
        let s = self.base.window_start();
        let r = ((x - s) / self.period).ceil() - 1.0;
        let y = x - r * self.period;
        let mut j = r as i64 * n + self.base.cumulative_count(y) as i64;
        // settle rounding at period boundaries against `point` itself
        while self.point(j) > x {
            j -= 1;
        }
        while self.point(j + 1) <= x {
            j += 1;
        }
        j
    }

    /// Two-sided label `x_n`: `x_1` is the first point in `(0, ∞)`, `x_0` the
    /// last point in `(-∞, 0]`, and so on in both directions.
    pub fn label_point(&self, n: i64) -> f64 {
        self.point(self.cumulative_index(0.0) + n)
    }

    /// Shift by `s`; the result tessellates the shifted base window.
    pub fn translate(&self, s: f64) -> Self {
        Self {
            base: self.base.translate(s),
            period: self.period,
        }
    }
}

impl PointSource for TessellatedConfiguration {
    fn points_between(&self, lo: f64, hi: f64) -> Vec<f64> {
        if lo > hi {
            return Vec::new();
        }
        // first index with point >= lo
        let mut j = self.cumulative_index(lo);
        while self.point(j) >= lo {
            j -= 1;
        }
        j += 1;
        let mut out = Vec::new();
        loop {
            let p = self.point(j);
            if p > hi {
                break;
            }
            out.push(p);
            j += 1;
        }
        out
    }

    fn count_in_interval(&self, a: f64, b: f64) -> Result<usize> {
        if a > b {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok((self.cumulative_index(b) - self.cumulative_index(a)) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TessellatedConfiguration {
        tessellate(&PointConfiguration::new(vec![1.0, 2.0, 4.0], 6.0).unwrap()).unwrap()
    }

    #[test]
    fn labels() {
        let t = sample();
        assert_eq!(t.label_point(1), 1.0);
        assert_eq!(t.label_point(0), -2.0);
        assert_eq!(t.label_point(4), 7.0);
        assert_eq!(t.label_point(-2), -5.0);
    }

    #[test]
    fn enumeration() {
        let t = sample();
        assert_eq!(
            t.points_between(-5.0, 10.0),
            vec![-5.0, -4.0, -2.0, 1.0, 2.0, 4.0, 7.0, 8.0, 10.0]
        );
        assert_eq!(t.count_in_interval(6.0, 12.0).unwrap(), 3);
        assert_eq!(t.count_in_interval(-0.5, 5.5).unwrap(), 3);
        assert!(t.count_in_interval(1.0, 0.0).is_err());
    }

    #[test]
    fn single_point_progression() {
        let t = tessellate(&PointConfiguration::new(vec![3.0], 5.0).unwrap()).unwrap();
        assert_eq!(t.points_between(-8.0, 14.0), vec![-7.0, -2.0, 3.0, 8.0, 13.0]);
    }

    #[test]
    fn empty_base_is_rejected() {
        let c = PointConfiguration::new(vec![], 1.0).unwrap();
        assert_eq!(tessellate(&c), Err(Error::NoPoints));
    }
}
