//! Gauss–Legendre rules on `[-1, 1]`.

use std::f64::consts::PI;

/// Nodes and weights of an `m`-point rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Gauss–Legendre rule of order `m` (exact up to degree `2m - 1`).
    pub fn gauss_legendre(m: usize) -> Self {
        assert!(m >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let half = m.div_ceil(2);
        for i in 0..half {
            // Tricomi's initial guess, then Newton on P_m
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Ascending nodes in `[-1, 1]`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights affinely mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        (
            self.nodes.iter().map(|&x| mid + half * x).collect(),
            self.weights.iter().map(|&w| half * w).collect(),
        )
    }

    /// `∫_a^b f`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_positive_and_sum_to_two() {
        for m in [1, 2, 3, 7, 16, 33, 64, 128] {
            let q = QuadratureRule::gauss_legendre(m);
            assert!(q.weights().iter().all(|&w| w > 0.0));
            let s: f64 = q.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "m={m} sum={s}");
            assert!(q.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_for_degree_2m_minus_1() {
        for m in [2, 5, 12, 24] {
            let q = QuadratureRule::gauss_legendre(m);
            for deg in 0..(2 * m) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got = q.integrate(-1.0, 1.0, |x| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "m={m} deg={deg}");
            }
            if m > 5 {
                continue;
            }
            // degree 2m is not integrated exactly
            let exact = 2.0 / (2.0 * m as f64 + 1.0);
            let got = q.integrate(-1.0, 1.0, |x| x.powi(2 * m as i32));
            assert!((got - exact).abs() > 1e-10);
        }
    }

    #[test]
    fn known_three_point_rule() {
        let q = QuadratureRule::gauss_legendre(3);
        let r = (0.6f64).sqrt();
        assert!((q.nodes()[2] - r).abs() < 1e-15);
        assert!((q.weights()[0] - 5.0 / 9.0).abs() < 1e-15);
        assert!((q.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }
}
