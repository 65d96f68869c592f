use super::kernel::sinc;
use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};

/// Largest gap length accepted by the Fredholm routines.
pub const MAX_GAP_LENGTH: f64 = 5.0;
/// Tolerance on successive Nyström orders.
pub const FREDHOLM_TOL: f64 = 1e-10;
const MIN_ORDER: usize = 8;
const MAX_ORDER: usize = 128;
/// Default finite-difference step for the gap density.
pub const P2_STEP: f64 = 1e-2;
const P2_NEGATIVE_TOL: f64 = 1e-6;
const CDF_PANEL_TOL: f64 = 1e-9;

/// `det(δ_ij - √(w_i w_j) S(x_i - x_j))` with an `m`-point Gauss–Legendre rule on `[0, t]`.
pub fn gap_determinant_with_order(t: f64, m: usize) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let (x, w) = QuadratureRule::gauss_legendre(m).mapped(0.0, t);
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        a[i * m + i] = 1.0 - w[i];
        for j in 0..i {
            let v = -sw[i] * sw[j] * sinc(x[i] - x[j]);
            a[i * m + j] = v;
            a[j * m + i] = v;
        }
    }
    super::linalg::det_in_place(&mut a, m)
}

/// A converged Fredholm determinant with the Nyström order that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapDeterminant {
    pub value: f64,
    pub order: usize,
    /// Change from the previous order.
    pub change: f64,
}

/// Doubles the order from 8 until successive values differ by less than
/// [`FREDHOLM_TOL`]; returns the best value reached at order 128 otherwise.
pub fn gap_determinant(t: f64) -> GapDeterminant {
    let mut m = MIN_ORDER;
    let mut prev = gap_determinant_with_order(t, m);
    loop {
        let next = gap_determinant_with_order(t, 2 * m);
        let change = (next - prev).abs();
        m *= 2;
        if change < FREDHOLM_TOL || m >= MAX_ORDER {
            return GapDeterminant {
                value: next,
                order: m,
                change,
            };
        }
        prev = next;
    }
}

/// `E(t) = det(1 - 1_{[0,t]} S 1_{[0,t]})`, the probability of no point in an interval of length `t`.
pub fn fredholm_det_gap(t: f64) -> Result<f64> {
    check_length(t)?;
    Ok(gap_determinant(t).value)
}

fn check_length(t: f64) -> Result<()> {
    if !(0.0..=MAX_GAP_LENGTH).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "gap length {t} outside [0, {MAX_GAP_LENGTH}]"
        )));
    }
    Ok(())
}

/// Second difference quotient of `E` at `t` with step `h`, fixed order `m`.
fn second_difference(t: f64, h: f64, m: usize, centre: f64) -> f64 {
    let plus = gap_determinant_with_order(t + h, m);
    let minus = gap_determinant_with_order(t - h, m);
    (plus - 2.0 * centre + minus) / (h * h)
}

/// `p_2(0, t) = E''(t)` by Richardson-extrapolated central differences, unchecked.
fn p2_raw(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let h = P2_STEP.min(t / 2.0);
    let m = gap_determinant(t + h).order;
    let centre = gap_determinant_with_order(t, m);
    let coarse = second_difference(t, h, m, centre);
    let fine = second_difference(t, h / 2.0, m, centre);
    (4.0 * fine - coarse) / 3.0
}

/// Density of the nearest-neighbour spacing of the sine process.
pub fn gap_density_p2(t: f64) -> Result<f64> {
    check_length(t)?;
    let v = p2_raw(t);
    if v < -P2_NEGATIVE_TOL {
        return Err(Error::DifferentiationUnstable { t, value: v });
    }
    Ok(v)
}

/// Width of the fixed integration panels.
const CDF_PANEL: f64 = 0.25;

fn panel(a: f64, b: f64, g: &dyn Fn(f64) -> Result<f64>, depth: usize) -> Result<f64> {
    let coarse = gauss(6, a, b, g)?;
    let fine = gauss(12, a, b, g)?;
    if (fine - coarse).abs() <= CDF_PANEL_TOL || depth >= 20 {
        return Ok(fine.max(0.0));
    }
    let mid = 0.5 * (a + b);
    Ok(panel(a, mid, g, depth + 1)? + panel(mid, b, g, depth + 1)?)
}

fn gauss(m: usize, a: f64, b: f64, g: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let (x, w) = QuadratureRule::gauss_legendre(m).mapped(a, b);
    let mut s = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        s += wi * g(*xi)?;
    }
    Ok(s)
}

/// Panels are anchored at multiples of [`CDF_PANEL`], so integrals over
/// nested ranges share their full panels bit for bit.
fn integrate_adaptive(a: f64, b: f64, g: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let first = (a / CDF_PANEL).floor() as i64;
    let last = (b / CDF_PANEL).ceil() as i64;
    let mut total = 0.0;
    for i in first..last {
        let lo = (i as f64 * CDF_PANEL).max(a);
        let hi = ((i + 1) as f64 * CDF_PANEL).min(b);
        if hi > lo {
            total += panel(lo, hi, g, 0)?;
        }
    }
    Ok(total)
}

/// `∫_a^b p_2(0, t) dt`.
pub(crate) fn integrate_density(a: f64, b: f64) -> Result<f64> {
    check_length(b)?;
    integrate_adaptive(a.max(0.0), b, &gap_density_p2)
}

/// `P(x_1(ς⁰) <= s) = ∫_0^s p_2(0, t) dt`.
pub fn spacing_cdf(s: f64) -> Result<f64> {
    check_length(s)?;
    integrate_adaptive(0.0, s, &gap_density_p2)
}

/// `∫_0^s t p_2(0, t) dt`, the spacing mean truncated at `s`.
pub fn spacing_mean(s: f64) -> Result<f64> {
    check_length(s)?;
    integrate_adaptive(0.0, s, &|t| gap_density_p2(t).map(|p| t * p))
}

/// Tabulated spacing law with cubic Hermite interpolation between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingTable {
    step: f64,
    cdf: Vec<f64>,
    density: Vec<f64>,
}

impl SpacingTable {
    /// Tabulates on `0, step, …, upper`; `upper` is clipped to [`MAX_GAP_LENGTH`].
    pub fn new(step: f64, upper: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("step {step}")));
        }
        let upper = upper.min(MAX_GAP_LENGTH);
        let n = (upper / step).round() as usize;
        let mut cdf = Vec::with_capacity(n + 1);
        let mut density = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cdf.push(0.0);
        density.push(0.0);
        for i in 1..=n {
            let lo = (i - 1) as f64 * step;
            let hi = (i as f64 * step).min(MAX_GAP_LENGTH);
            acc += panel(lo, hi, &gap_density_p2, 0)?;
            cdf.push(acc);
            density.push(gap_density_p2(hi)?);
        }
        Ok(Self { step, cdf, density })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn upper(&self) -> f64 {
        self.step * (self.cdf.len() - 1) as f64
    }

    /// Tabulated CDF values at the grid nodes.
    pub fn cdf_nodes(&self) -> &[f64] {
        &self.cdf
    }

    pub fn density_nodes(&self) -> &[f64] {
        &self.density
    }

    /// Interpolated CDF; 0 below the grid, the last node value above it.
    pub fn cdf(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let last = self.cdf.len() - 1;
        let u = s / self.step;
        let i = u.floor() as usize;
        if i >= last {
            return self.cdf[last];
        }
        let x = u - i as f64;
        let (f0, f1) = (self.cdf[i], self.cdf[i + 1]);
        let (d0, d1) = (self.density[i] * self.step, self.density[i + 1] * self.step);
        let x2 = x * x;
        let x3 = x2 * x;
        let v = (2.0 * x3 - 3.0 * x2 + 1.0) * f0
            + (x3 - 2.0 * x2 + x) * d0
            + (-2.0 * x3 + 3.0 * x2) * f1
            + (x3 - x2) * d1;
        v.clamp(f0, f1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gap_values() {
        assert_eq!(fredholm_det_gap(0.0).unwrap(), 1.0);
        let e1 = fredholm_det_gap(1.0).unwrap();
        assert!((e1 - 0.170_217_421_38).abs() < 1e-9, "{e1}");
        assert!(fredholm_det_gap(5.5).is_err());
        assert!(fredholm_det_gap(-0.1).is_err());
    }

    #[test]
    fn slope_at_origin_is_minus_one() {
        let h = 1e-4;
        let d = (fredholm_det_gap(h).unwrap() - 1.0) / h;
        assert!((d + 1.0).abs() < 1e-3);
    }

    #[test]
    fn order_doubling_is_converged() {
        for t in [0.5, 2.0, 5.0] {
            let g = gap_determinant(t);
            assert!(g.change < FREDHOLM_TOL);
            let doubled = gap_determinant_with_order(t, 2 * g.order);
            assert!((doubled - g.value).abs() < FREDHOLM_TOL);
        }
    }

    #[test]
    fn small_gap_density() {
        // E(t) = 1 - t + π² t⁴/36 - π⁴ t⁶/675 + O(t⁸)
        let t = 0.05;
        let p = gap_density_p2(t).unwrap();
        let series = PI * PI * t * t / 3.0 - 2.0 * PI.powi(4) * t.powi(4) / 45.0;
        assert!((p - series).abs() < 1e-7, "{p} vs {series}");
    }

    #[test]
    fn cdf_agrees_with_derivative_of_gap() {
        // ∫_0^s E'' = E'(s) + 1
        for s in [0.5, 1.0, 2.0] {
            let h = 1e-3;
            let m = gap_determinant(s + h).order;
            let de = (gap_determinant_with_order(s + h, m) - gap_determinant_with_order(s - h, m))
                / (2.0 * h);
            let f = spacing_cdf(s).unwrap();
            assert!((f - (de + 1.0)).abs() < 1e-5, "s={s} f={f} e'={de}");
        }
    }

    #[test]
    fn table_interpolates_cdf() {
        let table = SpacingTable::new(0.05, 3.0).unwrap();
        assert_eq!(table.cdf_nodes().len(), 61);
        for s in [0.33, 0.97, 1.61] {
            assert!((table.cdf(s) - spacing_cdf(s).unwrap()).abs() < 1e-6);
        }
        assert!(table.cdf_nodes().windows(2).all(|w| w[0] <= w[1]));
    }
}
