use super::{PointConfiguration, PointSource};
use crate::error::{Error, Result};
use crate::testfn::{check_arity, Profile, TestFunction};

/// `Σ f(x_{n_1}, …, x_{n_k})` over ordered tuples of distinct indices.
pub fn correlation_sum<P: PointSource + ?Sized>(config: &P, f: &TestFunction) -> Result<f64> {
    let a = f.reach();
    correlation_sum_points(&config.points_between(-a, a), f)
}

/// Same as [`correlation_sum`] on an explicit ascending list of points.
/// Points outside the support box contribute nothing and may be included or not.
pub fn correlation_sum_points(points: &[f64], f: &TestFunction) -> Result<f64> {
    check_arity(f.arity())?;
    debug_assert!(points.windows(2).all(|w| w[0] <= w[1]));
    let a = f.reach();
    let pts: Vec<f64> = points.iter().copied().filter(|x| x.abs() <= a).collect();
    if pts.len() < f.arity() {
        return Ok(0.0);
    }
    if let Some((window, separation)) = f.as_pair() {
        return Ok(pair_sum(&pts, window, separation));
    }
    if let Some(profiles) = f.as_product() {
        let values: Vec<Vec<f64>> = profiles
            .iter()
            .map(|p| pts.iter().map(|&x| p.eval(x)).collect())
            .collect();
        let mut used = vec![false; pts.len()];
        return Ok(product_sum(&values, 0, &mut used));
    }
    let mut tuple = Vec::with_capacity(f.arity());
    let mut used = vec![false; pts.len()];
    Ok(generic_sum(&pts, f, &mut tuple, &mut used))
}

fn pair_sum(pts: &[f64], window: &Profile, separation: &Profile) -> f64 {
    let (slo, shi) = separation.support();
    let mut total = 0.0;
    for (i, &x) in pts.iter().enumerate() {
        let w = window.eval(x);
        if w == 0.0 {
            continue;
        }
        // pts is sorted, so the partners lie in a contiguous run
        let lo = pts.partition_point(|&y| y - x < slo);
        let hi = pts.partition_point(|&y| y - x <= shi);
        let mut inner = 0.0;
        for (j, &y) in pts.iter().enumerate().take(hi).skip(lo) {
            if j != i {
                inner += separation.eval(y - x);
            }
        }
        total += w * inner;
    }
    total
}

fn product_sum(values: &[Vec<f64>], depth: usize, used: &mut [bool]) -> f64 {
    if depth == values.len() {
        return 1.0;
    }
    let mut total = 0.0;
    for i in 0..used.len() {
        let v = values[depth][i];
        if used[i] || v == 0.0 {
            continue;
        }
        used[i] = true;
        total += v * product_sum(values, depth + 1, used);
        used[i] = false;
    }
    total
}

fn generic_sum(pts: &[f64], f: &TestFunction, tuple: &mut Vec<f64>, used: &mut [bool]) -> f64 {
    if tuple.len() == f.arity() {
        return f.eval(tuple);
    }
    let mut total = 0.0;
    for i in 0..pts.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        tuple.push(pts[i]);
        total += generic_sum(pts, f, tuple, used);
        tuple.pop();
        used[i] = false;
    }
    total
}

/// `n (n-1) ⋯ (n-a+1)`.
pub fn falling_factorial(n: usize, a: usize) -> f64 {
    if a > n {
        return 0.0;
    }
    ((n - a + 1)..=n).map(|v| v as f64).product()
}

/// `Π_j (ξ(I_j))_{a_j}` for pairwise disjoint half-open intervals `I_j`.
pub fn falling_factorial_count<P: PointSource + ?Sized>(
    config: &P,
    intervals: &[(f64, f64)],
    a: &[usize],
) -> Result<f64> {
    if intervals.len() != a.len() {
        return Err(Error::InvalidParameter(
            "one multiplicity per interval required".into(),
        ));
    }
    check_disjoint(intervals)?;
    let mut out = 1.0;
    for (&(lo, hi), &aj) in intervals.iter().zip(a) {
        out *= falling_factorial(config.count_in_interval(lo, hi)?, aj);
    }
    Ok(out)
}

pub(crate) fn check_disjoint(intervals: &[(f64, f64)]) -> Result<()> {
    for &(a, b) in intervals {
        if a > b {
            return Err(Error::InvalidInterval { a, b });
        }
    }
    for (i, &(a1, b1)) in intervals.iter().enumerate() {
        for &(a2, b2) in &intervals[i + 1..] {
            if a1.max(a2) < b1.min(b2) {
                return Err(Error::OverlappingIntervals(a1, b1, a2, b2));
            }
        }
    }
    Ok(())
}

/// `Σ_n f(x_n)`.
pub fn linear_statistic(config: &PointConfiguration, f: &Profile) -> f64 {
    let (lo, hi) = f.support();
    config.slice_closed(lo, hi).iter().map(|&x| f.eval(x)).sum()
}

/// `Π_i Σ_n f_i(x_n)`, computed directly.
pub fn mixed_moment(config: &PointConfiguration, fs: &[Profile]) -> f64 {
    fs.iter().map(|f| linear_statistic(config, f)).product()
}

/// `Π_i Σ_n f_i(x_n)` expanded into correlation sums of merged products via
/// `C_j(g) · Σ f = C_{j+1}(g, f) + Σ_i C_j(g_1, …, g_i f, …, g_j)`.
pub fn mixed_moment_by_correlations(config: &PointConfiguration, fs: &[Profile]) -> f64 {
    if fs.is_empty() {
        return 1.0;
    }
    let pts = config.points();
    let values: Vec<Vec<f64>> = fs
        .iter()
        .map(|f| pts.iter().map(|&x| f.eval(x)).collect())
        .collect();
    // each term is a list of groups; a group multiplies the listed functions
    let mut terms: Vec<Vec<Vec<usize>>> = vec![vec![vec![0]]];
    for next in 1..fs.len() {
        let mut expanded = Vec::new();
        for term in &terms {
            let mut extended = term.clone();
            extended.push(vec![next]);
            expanded.push(extended);
            for g in 0..term.len() {
                let mut merged = term.clone();
                merged[g].push(next);
                expanded.push(merged);
            }
        }
        terms = expanded;
    }
    terms
        .iter()
        .map(|groups| {
            let merged: Vec<Vec<f64>> = groups
                .iter()
                .map(|g| {
                    (0..pts.len())
                        .map(|n| g.iter().map(|&i| values[i][n]).product())
                        .collect()
                })
                .collect();
            let mut used = vec![false; pts.len()];
            product_sum(&merged, 0, &mut used)
        })
        .sum()
}

/// `S_1 ⋯ S_k` via `(1/k!) Σ_{ε ∈ {0,1}^k} (-1)^{k-|ε|} (Σ ε_i S_i)^k`.
pub fn polarized_product(s: &[f64]) -> f64 {
    let k = s.len();
    let mut total = 0.0;
    for mask in 0u32..(1 << k) {
        let ones = mask.count_ones() as usize;
        let sum: f64 = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).sum();
        let sign = if (k - ones) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * sum.powi(k as i32);
    }
    let fact: f64 = (1..=k).map(|v| v as f64).product();
    total / fact
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_pairs(points: &[f64], f: &TestFunction) -> f64 {
        let mut s = 0.0;
        for i in 0..points.len() {
            for j in 0..points.len() {
                if i != j {
                    s += f.eval(&[points[i], points[j]]);
                }
            }
        }
        s
    }

    #[test]
    fn single_point_tent() {
        let c = PointConfiguration::with_window(vec![0.5], -2.0, 2.0).unwrap();
        let f = TestFunction::single(Profile::tent(0.0, 1.0));
        assert_eq!(correlation_sum(&c, &f).unwrap(), 0.5);
    }

    #[test]
    fn double_point_counts_ordered_pairs() {
        let f = TestFunction::product(vec![Profile::indicator(-1.0, 1.0, 0.1); 2]).unwrap();
        assert_eq!(correlation_sum_points(&[0.0, 0.0], &f).unwrap(), 2.0);
    }

    #[test]
    fn box_excludes_far_points() {
        let f = TestFunction::custom(2, 1.5, |_| 1.0).unwrap();
        let pts = [0.0, 1.0, 2.0];
        assert_eq!(correlation_sum_points(&pts, &f).unwrap(), 2.0);
        assert_eq!(brute_pairs(&pts, &f), 2.0);
    }

    #[test]
    fn pair_rule_matches_brute_force() {
        let f = TestFunction::pair(Profile::tent(0.2, 1.5), Profile::tent(0.8, 0.6));
        let pts = [-1.2, -0.4, 0.1, 0.1, 0.7, 1.3, 2.0];
        let fast = correlation_sum_points(&pts, &f).unwrap();
        assert!((fast - brute_pairs(&pts, &f)).abs() < 1e-14);
        assert!(fast > 0.0);
    }

    #[test]
    fn falling_factorials() {
        let c = PointConfiguration::new(vec![0.5, 1.5, 2.5, 3.5, 4.5], 6.0).unwrap();
        assert_eq!(falling_factorial_count(&c, &[(0.0, 3.0)], &[2]).unwrap(), 6.0);
        assert_eq!(falling_factorial_count(&c, &[(0.0, 1.0)], &[2]).unwrap(), 0.0);
        assert_eq!(
            falling_factorial_count(&c, &[(0.0, 2.0), (2.0, 5.0)], &[1, 2]).unwrap(),
            12.0
        );
        assert!(matches!(
            falling_factorial_count(&c, &[(0.0, 2.0), (1.0, 5.0)], &[1, 1]),
            Err(Error::OverlappingIntervals(..))
        ));
    }

    #[test]
    fn arity_is_capped() {
        let f = TestFunction::custom(6, 1.0, |_| 1.0).unwrap();
        assert_eq!(correlation_sum_points(&[0.0; 5], &f).unwrap(), 0.0);
        assert_eq!(correlation_sum_points(&[0.0; 6], &f).unwrap(), 720.0);
    }

    #[test]
    fn polarization_small_cases() {
        assert!((polarized_product(&[3.0]) - 3.0).abs() < 1e-15);
        assert!((polarized_product(&[3.0, 5.0]) - 15.0).abs() < 1e-13);
        assert!((polarized_product(&[2.0, 3.0, 7.0]) - 42.0).abs() < 1e-12);
    }
}
