//! Box integrals of the sine-kernel correlation densities and the occupation
//! probability series built from them.
//!
//! The tensor Gauss–Legendre rule for `∫ det[S(x_i - x_j)]` over `Π I_j^{a_j}`
//! only sees tuples of distinct nodes (repeated nodes give a singular matrix),
//! so it equals `a! · [z^a] det(I + Z M)` where `M = √w S √w` on the
//! concatenated nodes and `Z` scales the rows of block `j` by `z_j`. The
//! coefficients are read off by a discrete Fourier transform on the unit torus.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::sinc;
use super::linalg::complex_det_in_place;
use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};
use crate::pointproc::check_disjoint;

/// Largest total multiplicity `|a|` handled by the series machinery.
pub const MAX_SERIES_DEGREE: usize = 32;
/// Relative tolerance between successive quadrature orders.
pub const CORRELATION_INTEGRAL_TOL: f64 = 1e-8;
/// Absolute floor, on the scale of `C(I, a) / a!`, for the order test.
pub const COEFFICIENT_FLOOR: f64 = 1e-14;
/// Certified tail target for the occupation series.
pub const OCCUPATION_TAIL_TOL: f64 = 1e-7;
const MIN_NODES: usize = 4;
const MAX_NODES: usize = 64;
const MAX_GRID: usize = 1 << 16;

/// `[z^a] det(I + Z M)` for all `a` below the per-interval DFT sizes.
#[derive(Debug, Clone)]
struct MinorSums {
    dims: Vec<usize>,
    coeffs: Vec<f64>,
}

impl MinorSums {
    fn get(&self, a: &[usize]) -> f64 {
        let mut idx = 0;
        for (j, &aj) in a.iter().enumerate() {
            if aj >= self.dims[j] {
                return 0.0;
            }
            idx = idx * self.dims[j] + aj;
        }
        self.coeffs[idx]
    }

    fn compute(intervals: &[(f64, f64)], m: usize, dims: &[usize]) -> Self {
        let k = intervals.len();
        let rule = QuadratureRule::gauss_legendre(m);
        let mut x = Vec::with_capacity(k * m);
        let mut sw = Vec::with_capacity(k * m);
        for &(a, b) in intervals {
            let (nodes, weights) = rule.mapped(a, b);
            x.extend(nodes);
            sw.extend(weights.iter().map(|w| w.sqrt()));
        }
        let n = k * m;
        let mut kernel = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                kernel[i * n + j] = sw[i] * sw[j] * sinc(x[i] - x[j]);
            }
        }
        let total: usize = dims.iter().product();
        let values: Vec<Complex64> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut rem = flat;
                let mut z = vec![Complex64::new(0.0, 0.0); k];
                for j in (0..k).rev() {
                    let g = rem % dims[j];
                    rem /= dims[j];
                    z[j] = Complex64::from_polar(1.0, 2.0 * PI * g as f64 / dims[j] as f64);
                }
                let mut a = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    let zi = z[i / m];
                    for j in 0..n {
                        a[i * n + j] = zi * kernel[i * n + j];
                    }
                    a[i * n + i] += 1.0;
                }
                complex_det_in_place(&mut a, n)
            })
            .collect();
        let coeffs = inverse_dft(values, dims).into_iter().map(|c| c.re).collect();
        Self {
            dims: dims.to_vec(),
            coeffs,
        }
    }
}

/// Separable inverse DFT over a row-major grid.
fn inverse_dft(mut data: Vec<Complex64>, dims: &[usize]) -> Vec<Complex64> {
    let k = dims.len();
    for axis in 0..k {
        let p = dims[axis];
        let stride: usize = dims[axis + 1..].iter().product();
        let outer: usize = dims[..axis].iter().product();
        let twiddle: Vec<Complex64> = (0..p)
            .map(|t| Complex64::from_polar(1.0 / p as f64, -2.0 * PI * t as f64 / p as f64))
            .collect();
        let mut line = vec![Complex64::new(0.0, 0.0); p];
        for o in 0..outer {
            for s in 0..stride {
                let base = o * p * stride + s;
                for (g, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + g * stride];
                }
                for a in 0..p {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (g, v) in line.iter().enumerate() {
                        acc += v * twiddle[(g * a) % p];
                    }
                    data[base + a * stride] = acc;
                }
            }
        }
    }
    data
}

fn dft_size(max_degree: usize) -> usize {
    (max_degree + 16).next_power_of_two().max(32)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_intervals(intervals: &[(f64, f64)]) -> Result<()> {
    if intervals.is_empty() {
        return Err(Error::InvalidParameter("no intervals".into()));
    }
    for &(a, b) in intervals {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::InvalidInterval { a, b });
        }
    }
    Ok(())
}

/// Minor sums with the node count doubled until every coefficient up to
/// `max_degree` is stable; returns the table and the node count used.
fn converged_minor_sums(
    intervals: &[(f64, f64)],
    max_degree: &[usize],
) -> Result<(MinorSums, usize)> {
    let dims: Vec<usize> = max_degree.iter().map(|&d| dft_size(d)).collect();
    if dims.iter().product::<usize>() > MAX_GRID {
        return Err(Error::InvalidParameter(format!(
            "{} intervals with degrees {max_degree:?} exceed the evaluation grid",
            intervals.len()
        )));
    }
    let largest = max_degree.iter().copied().max().unwrap_or(0);
    let mut m = largest.next_power_of_two().clamp(MIN_NODES, MAX_NODES);
    let mut prev = MinorSums::compute(intervals, m, &dims);
    loop {
        let next_m = 2 * m;
        let next = MinorSums::compute(intervals, next_m, &dims);
        let mut worst: Option<(f64, f64)> = None;
        let mut index = vec![0usize; max_degree.len()];
        loop {
            let (c1, c0) = (next.get(&index), prev.get(&index));
            if (c1 - c0).abs() > CORRELATION_INTEGRAL_TOL * c1.abs() + COEFFICIENT_FLOOR {
                worst = Some((c1, c0));
                break;
            }
            if !advance(&mut index, max_degree) {
                break;
            }
        }
        match worst {
            None => return Ok((next, next_m)),
            Some((last, previous)) if next_m >= MAX_NODES => {
                return Err(Error::NoConvergence { last, previous })
            }
            Some(_) => {
                prev = next;
                m = next_m;
            }
        }
    }
}

/// Odometer increment of a multi-index bounded by `max` (inclusive).
fn advance(index: &mut [usize], max: &[usize]) -> bool {
    for j in (0..index.len()).rev() {
        if index[j] < max[j] {
            index[j] += 1;
            return true;
        }
        index[j] = 0;
    }
    false
}

/// `C(I, a) = ∫_{I_1^{a_1} × ⋯ × I_k^{a_k}} det[S(x_i - x_j)] dx` by the tensor
/// Gauss–Legendre rule, node count doubled from 4 to 64.
pub fn correlation_integral(intervals: &[(f64, f64)], a: &[usize]) -> Result<f64> {
    check_intervals(intervals)?;
    if intervals.len() != a.len() {
        return Err(Error::InvalidParameter(
            "one multiplicity per interval required".into(),
        ));
    }
    let total: usize = a.iter().sum();
    if total > MAX_SERIES_DEGREE {
        return Err(Error::ArityOutOfRange {
            arity: total,
            max: MAX_SERIES_DEGREE,
        });
    }
    let (kept, degrees): (Vec<(f64, f64)>, Vec<usize>) = intervals
        .iter()
        .zip(a)
        .filter(|(_, &aj)| aj > 0)
        .map(|(&i, &aj)| (i, aj))
        .unzip();
    if kept.is_empty() {
        return Ok(1.0);
    }
    let (sums, _) = converged_minor_sums(&kept, &degrees)?;
    let scale: f64 = degrees.iter().map(|&d| factorial(d)).product();
    Ok(scale * sums.get(&degrees))
}

/// A truncated occupation series with its certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Occupation {
    pub value: f64,
    pub tail_bound: f64,
    /// Highest `|n|` kept in the series.
    pub degree: usize,
}

/// Smallest `D` with `prefactor · Σ_{d > D} L^d / d! < tol`, and that tail.
fn series_degree(prefactor: f64, total_length: f64, tol: f64, cap: usize) -> Result<(usize, f64)> {
    let mut term = 1.0;
    let mut partial = 0.0;
    let full = total_length.exp();
    for d in 0..=cap {
        if d > 0 {
            term *= total_length / d as f64;
        }
        partial += term;
        // guard the subtraction once the partial sum is close to e^L
        let tail = prefactor * (full - partial).max(remaining(term, total_length, d));
        if tail < tol {
            return Ok((d, tail));
        }
    }
    let tail = prefactor * (full - partial).max(0.0);
    Err(Error::SeriesCap { tail, cap })
}

/// Upper bound on `Σ_{j > d} L^j / j!` given the `d`-th term.
fn remaining(term_d: f64, length: f64, d: usize) -> f64 {
    let ratio = length / (d as f64 + 2.0);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    term_d * length / (d as f64 + 1.0) / (1.0 - ratio)
}

fn occupation_from(sums: &MinorSums, lambda: &[usize], degree: usize) -> f64 {
    let k = lambda.len();
    let caps = vec![degree; k];
    let mut n = vec![0usize; k];
    let mut value = 0.0;
    loop {
        let total: usize = n.iter().sum();
        if total <= degree {
            let idx: Vec<usize> = lambda.iter().zip(&n).map(|(l, m)| l + m).collect();
            let weight: f64 = lambda
                .iter()
                .zip(&n)
                .map(|(&l, &m)| binomial(l + m, m))
                .product();
            let sign = if total % 2 == 0 { 1.0 } else { -1.0 };
            value += sign * weight * sums.get(&idx);
        }
        if !advance(&mut n, &caps) {
            break;
        }
    }
    value
}

/// `P(ς(I_1) = λ_1, …, ς(I_k) = λ_k)` for pairwise disjoint bounded intervals,
/// summed until the majorant of the remaining terms is below [`OCCUPATION_TAIL_TOL`].
pub fn occupation_probability(intervals: &[(f64, f64)], lambda: &[usize]) -> Result<Occupation> {
    check_intervals(intervals)?;
    check_disjoint(intervals)?;
    if intervals.len() != lambda.len() {
        return Err(Error::InvalidParameter(
            "one count per interval required".into(),
        ));
    }
    let lengths: Vec<f64> = intervals.iter().map(|&(a, b)| b - a).collect();
    let total_length: f64 = lengths.iter().sum();
    let prefactor: f64 = lengths
        .iter()
        .zip(lambda)
        .map(|(&l, &m)| l.powi(m as i32) / factorial(m))
        .product();
    let used: usize = lambda.iter().sum();
    let cap = MAX_SERIES_DEGREE.saturating_sub(used);
    let (degree, tail_bound) = series_degree(prefactor, total_length, OCCUPATION_TAIL_TOL, cap)?;
    let max_degree: Vec<usize> = lambda.iter().map(|&l| l + degree).collect();
    let (sums, _) = converged_minor_sums(intervals, &max_degree)?;
    Ok(Occupation {
        value: occupation_from(&sums, lambda, degree),
        tail_bound,
        degree,
    })
}

/// Fitted exponential tail for the count in one interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub interval: (f64, f64),
    pub rate: f64,
    /// `P(ς(I) = λ)` for `λ = 0..probabilities.len()`.
    pub probabilities: Vec<f64>,
    /// Upper bounds on `P(ς(I) >= λ)` for the same range.
    pub tails: Vec<f64>,
    /// Smallest `C` with `tails[λ] <= C e^{-rate λ}` on the computed range.
    pub constant: f64,
    /// Set when the series cap stopped the computation before `lambda_max`.
    pub truncated_at: Option<usize>,
}

/// Probabilities `P(ς(I) = λ)` for `λ = 0..=lambda_max` and the smallest
/// constant `C` making `P(ς(I) >= λ) <= C e^{-cλ}` on that range.
pub fn tail_bound_check(interval: (f64, f64), rate: f64, lambda_max: usize) -> Result<TailReport> {
    check_intervals(&[interval])?;
    if !(rate > 0.0) {
        return Err(Error::InvalidParameter(format!("rate {rate}")));
    }
    let length = interval.1 - interval.0;
    let mut probabilities = Vec::new();
    let mut truncated_at = None;
    for lambda in 0..=lambda_max {
        match occupation_probability(&[interval], &[lambda]) {
            Ok(o) => probabilities.push(o.value),
            Err(Error::SeriesCap { .. }) => {
                truncated_at = Some(lambda);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let top = probabilities.len();
    // P(ς >= top) <= E binom(ς, top) = C(I, top)/top! <= |I|^top / top!
    let crude = length.powi(top as i32) / factorial(top);
    let beyond = match correlation_integral(&[interval], &[top]) {
        Ok(c) => (c.max(0.0) / factorial(top) + COEFFICIENT_FLOOR).min(crude),
        Err(_) => crude,
    };
    let mut tails = vec![0.0; top];
    let mut acc = beyond;
    for lambda in (0..top).rev() {
        acc += probabilities[lambda].max(0.0);
        tails[lambda] = acc.min(1.0);
    }
    let constant = tails
        .iter()
        .enumerate()
        .map(|(l, &p)| p * (rate * l as f64).exp())
        .fold(0.0, f64::max);
    Ok(TailReport {
        interval,
        rate,
        probabilities,
        tails,
        constant,
        truncated_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_integral_is_length() {
        for s in [0.3, 1.0, 2.5] {
            let c = correlation_integral(&[(0.0, s)], &[1]).unwrap();
            assert!((c - s).abs() < 1e-12);
        }
        assert_eq!(correlation_integral(&[(0.0, 1.0)], &[0]).unwrap(), 1.0);
    }

    #[test]
    fn pair_integral_closed_form() {
        // ∫∫_{[0,1]^2} (1 - S(x-y)^2) = 2 ∫_0^1 (1-u)(1 - S(u)^2) du
        let rule = QuadratureRule::gauss_legendre(64);
        let oracle = 2.0 * rule.integrate(0.0, 1.0, |u| (1.0 - u) * (1.0 - sinc(u).powi(2)));
        let c = correlation_integral(&[(0.0, 1.0)], &[2]).unwrap();
        assert!((c - oracle).abs() < 1e-12, "{c} vs {oracle}");
    }

    #[test]
    fn occupation_small_interval() {
        let p = occupation_probability(&[(0.0, 0.01)], &[0]).unwrap();
        assert!(p.value > 0.9899 && p.value < 0.99005);
        assert!(p.tail_bound < OCCUPATION_TAIL_TOL);
    }

    #[test]
    fn occupation_rejects_overlap() {
        assert!(occupation_probability(&[(0.0, 1.0), (0.5, 2.0)], &[0, 0]).is_err());
    }

    #[test]
    fn series_degree_hits_target() {
        let (d, tail) = series_degree(1.0, 1.0, 1e-7, 32).unwrap();
        // Σ_{j > 10} 1/j! ≈ 2.7e-8, Σ_{j > 9} 1/j! ≈ 3.0e-7
        assert_eq!(d, 10);
        assert!(tail < 1e-7);
        assert!(matches!(
            series_degree(1.0, 20.0, 1e-7, 32),
            Err(Error::SeriesCap { .. })
        ));
    }
}
