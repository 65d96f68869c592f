use std::f64::consts::PI;

use gue_equiv::sinekernel::{
    correlation_density, correlation_integral, fredholm_det_gap, gap_density_p2,
    occupation_probability, sinc, sine_reference_table, spacing_cdf, tail_bound_check,
    KernelMatrix, QuadratureRule, SpacingTable,
};
use proptest::prelude::*;

/// `∫_{box} det[S(x_i - x_j)]` by a plain tensor Gauss–Legendre rule.
fn tensor_integral(intervals: &[(f64, f64)], a: &[usize], m: usize) -> f64 {
    let mut axes: Vec<(f64, f64)> = Vec::new();
    for (&(lo, hi), &aj) in intervals.iter().zip(a) {
        axes.extend(std::iter::repeat_n((lo, hi), aj));
    }
    let rules: Vec<(Vec<f64>, Vec<f64>)> = axes
        .iter()
        .map(|&(lo, hi)| QuadratureRule::gauss_legendre(m).mapped(lo, hi))
        .collect();
    let k = axes.len();
    let mut idx = vec![0usize; k];
    let mut total = 0.0;
    loop {
        let nodes: Vec<f64> = (0..k).map(|d| rules[d].0[idx[d]]).collect();
        let w: f64 = (0..k).map(|d| rules[d].1[idx[d]]).product();
        total += w * KernelMatrix::new(&nodes).determinant();
        let mut d = 0;
        loop {
            if d == k {
                return total;
            }
            idx[d] += 1;
            if idx[d] < m {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

proptest! {
    #[test]
    fn kernel_matrix_invariants(nodes in prop::collection::vec(-6.0f64..6.0, 1..=6)) {
        let m = KernelMatrix::new(&nodes);
        for i in 0..m.size() {
            prop_assert_eq!(m.get(i, i), 1.0);
            for j in 0..m.size() {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        let d = correlation_density(&nodes).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&d));
    }

    #[test]
    fn density_is_translation_invariant(nodes in prop::collection::vec(-4.0f64..4.0, 2..=5), s in -3.0f64..3.0) {
        let moved: Vec<f64> = nodes.iter().map(|x| x + s).collect();
        let a = correlation_density(&nodes).unwrap();
        let b = correlation_density(&moved).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn coincident_nodes_have_zero_density(nodes in prop::collection::vec(-4.0f64..4.0, 1..=5)) {
        let mut v = nodes.clone();
        v.push(nodes[0]);
        prop_assert!(correlation_density(&v).unwrap().abs() < 1e-12);
    }
}

#[test]
fn pair_density_closed_form() {
    for u in [0.1, 0.5, 1.0, 1.5, 2.3] {
        let s = (PI * u).sin() / (PI * u);
        assert!((correlation_density(&[0.0, u]).unwrap() - (1.0 - s * s)).abs() < 1e-14);
    }
    assert!(correlation_density(&[0.0; 9]).is_err());
}

#[test]
fn pair_integrals_match_high_precision_values() {
    // reference values from a 30-digit quadrature of s² - 2∫_0^s (s-u) S(u)² du
    for (s, expected) in [
        (0.5, 0.030_157_936_373_330_185),
        (1.0, 0.344_162_593_514_038_19),
        (2.0, 2.415_671_612_497_246_3),
    ] {
        let c = correlation_integral(&[(0.0, s)], &[2]).unwrap();
        assert!((c - expected).abs() < 1e-8, "s = {s}: {c}");
    }
}

#[test]
fn higher_integrals_match_tensor_quadrature() {
    let cases: [(&[(f64, f64)], &[usize]); 4] = [
        (&[(0.0, 0.7)], &[3]),
        (&[(0.0, 0.5), (0.5, 1.2)], &[1, 1]),
        (&[(-0.4, 0.3), (0.6, 1.4)], &[2, 1]),
        (&[(0.0, 1.0)], &[4]),
    ];
    for (intervals, a) in cases {
        let series = correlation_integral(intervals, a).unwrap();
        let brute = tensor_integral(intervals, a, 14);
        assert!(
            (series - brute).abs() < 1e-8 * brute.abs().max(1e-6),
            "{intervals:?} {a:?}: {series} vs {brute}"
        );
    }
}

#[test]
fn occupation_probabilities_form_a_law() {
    let interval = (0.0, 1.0);
    let probs: Vec<f64> = (0..=8)
        .map(|l| occupation_probability(&[interval], &[l]).unwrap().value)
        .collect();
    let total: f64 = probs.iter().sum();
    let mean: f64 = probs.iter().enumerate().map(|(l, p)| l as f64 * p).sum();
    assert!((total - 1.0).abs() < 1e-8);
    assert!((mean - 1.0).abs() < 1e-8);
    // 30-digit Fredholm reference values
    let reference = [0.170_217_4, 0.661_428_6, 0.166_490_9, 1.862_684e-3];
    for (p, r) in probs.iter().zip(reference) {
        assert!((p - r).abs() < 1e-6, "{p} vs {r}");
    }
    // number variance of the sine process on [0, 1]
    let second: f64 = probs.iter().enumerate().map(|(l, p)| (l * l) as f64 * p).sum();
    let c2 = correlation_integral(&[interval], &[2]).unwrap();
    assert!((second - mean - c2).abs() < 1e-8);
}

#[test]
fn joint_occupation_marginalizes() {
    let a = (0.0, 0.6);
    let b = (0.6, 1.3);
    for la in 0..3 {
        let marginal = occupation_probability(&[a], &[la]).unwrap().value;
        let summed: f64 = (0..=7)
            .map(|lb| occupation_probability(&[a, b], &[la, lb]).unwrap().value)
            .sum();
        assert!((marginal - summed).abs() < 1e-7, "{la}: {marginal} vs {summed}");
    }
}

#[test]
fn gap_determinant_small_length_expansion() {
    for s in [0.02f64, 0.05, 0.1] {
        let e: f64 = 1.0 - s + PI.powi(2) * s.powi(4) / 36.0 - PI.powi(4) * s.powi(6) / 675.0;
        assert!((fredholm_det_gap(s).unwrap() - e).abs() < 1e-9, "{s}");
    }
    assert_eq!(fredholm_det_gap(0.0).unwrap(), 1.0);
}

#[test]
fn spacing_density_and_cdf_are_consistent() {
    let mut prev = 0.0;
    for i in 1..=50 {
        let s = 0.1 * i as f64;
        let p = gap_density_p2(s).unwrap();
        assert!(p >= -1e-6, "p2({s}) = {p}");
        let c = spacing_cdf(s).unwrap();
        assert!(c >= prev - 1e-12 && c <= 1.0 + 1e-9, "{s}: {c} after {prev}");
        prev = c;
    }
    let table = SpacingTable::new(0.05, 5.0).unwrap();
    for s in [0.13, 0.77, 1.01, 2.49, 3.333] {
        assert!((table.cdf(s) - spacing_cdf(s).unwrap()).abs() < 1e-6, "{s}");
    }
    assert!(gap_density_p2(5.5).is_err());
}

#[test]
fn reference_table_shape() {
    let rows = sine_reference_table(0.0, 3.0, 0.05).unwrap();
    assert_eq!(rows.len(), 61);
    assert!(rows.windows(2).all(|w| w[1].gap_det <= w[0].gap_det));
    assert!((rows[20].cdf - spacing_cdf(1.0).unwrap()).abs() < 1e-8);
}

#[test]
fn count_tails_decay_exponentially() {
    let r = tail_bound_check((0.0, 1.0), 1.0, 8).unwrap();
    assert!(r.tails.windows(2).all(|w| w[1] <= w[0]));
    assert!(r.constant.is_finite() && r.constant < 10.0);
    assert!(r.tails[4] < 1e-4);
    assert!(sinc(0.0) == 1.0);
}
