use gue_equiv::synth::{
    gue_batch, gue_eigenvalues, gue_unfolded_spectrum, lattice_spectrum, poisson_spectrum,
    sample_chi, semicircle_cdf, tridiagonal_eigenvalues, RngSpec,
};
use gue_equiv::estimators::ks_distance;
use gue_equiv::unfold::Provenance;
use proptest::prelude::*;
use rand::Rng;

/// Number of eigenvalues below `x` from the Sturm sequence of `T - x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let prev = if q == 0.0 { f64::EPSILON } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn sturm_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    let bound = diag.iter().map(|d| d.abs()).fold(0.0, f64::max)
        + 2.0 * off.iter().map(|o| o.abs()).fold(0.0, f64::max)
        + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tridiagonal_eigenvalues_match_bisection(seed in 0u64..10_000, n in 1usize..40) {
        let mut rng = RngSpec::new(seed).rng();
        let diag: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let off: Vec<f64> = (1..n).map(|_| rng.random_range(0.0..2.0)).collect();
        let ev = tridiagonal_eigenvalues(&diag, &off).unwrap();
        prop_assert_eq!(ev.len(), n);
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        for (k, &v) in ev.iter().enumerate() {
            let oracle = sturm_eigenvalue(&diag, &off, k);
            prop_assert!((v - oracle).abs() < 1e-9 * oracle.abs().max(1.0), "{} vs {}", v, oracle);
        }
    }

    #[test]
    fn lattice_is_exact(t in 1u64..2000, seed in 0u64..1000) {
        let c = lattice_spectrum(t, &mut RngSpec::new(seed).rng()).unwrap();
        let u = c.points()[0];
        prop_assert!(u > 0.0 && u <= 1.0);
        for (k, &p) in c.points().iter().enumerate() {
            prop_assert_eq!(p, u + k as f64);
        }
        prop_assert!(c.len() as u64 == t || (c.len() as u64 == t - 1 && u < 1.0));
    }
}

#[test]
fn poisson_count_is_close_to_length() {
    for seed in 0..5 {
        let t = 50_000.0;
        let c = poisson_spectrum(t, &mut RngSpec::new(seed).rng()).unwrap();
        assert!((c.len() as f64 - t).abs() < 5.0 * t.sqrt());
        assert!(c.points().iter().all(|&x| x > 0.0 && x <= t));
    }
    assert!(poisson_spectrum(-1.0, &mut RngSpec::new(0).rng()).is_err());
}

#[test]
fn chi_moments() {
    let mut rng = RngSpec::new(99).rng();
    let draws = 40_000;
    for df in [1.0, 4.0, 7.5, 30.0] {
        let second: f64 = (0..draws).map(|_| sample_chi(df, &mut rng).powi(2)).sum::<f64>() / draws as f64;
        // E χ² = df, Var χ² = 2 df
        let se = (2.0 * df / draws as f64).sqrt();
        assert!((second - df).abs() < 5.0 * se + 0.01 * df, "df {df}: {second}");
    }
    assert_eq!(sample_chi(0.0, &mut rng), 0.0);
}

#[test]
fn gue_spectrum_fills_the_semicircle() {
    let n = 400;
    let ev = gue_eigenvalues(n, &mut RngSpec::new(5).rng()).unwrap();
    let radius = (2.0 * n as f64).sqrt();
    let mut scaled: Vec<f64> = ev.iter().map(|x| x / radius).collect();
    assert!(scaled.iter().all(|x| x.abs() < 1.1));
    assert!(ks_distance(&mut scaled, semicircle_cdf) < 0.05);
}

#[test]
fn gue_bulk_has_unit_spacing() {
    let s = gue_unfolded_spectrum(1000, &mut RngSpec::new(8).rng()).unwrap();
    assert_eq!(s.provenance(), Provenance::Gue);
    assert_eq!(s.len(), 500);
    let p = s.unfolded().points();
    let mean = (p[p.len() - 1] - p[0]) / (p.len() - 1) as f64;
    assert!((mean - 1.0).abs() < 0.05, "{mean}");
    let u = s.unfolded();
    assert!(u.window_start() < p[0] && u.window_end() == p[p.len() - 1]);
}

#[test]
fn batches_are_reproducible_per_substream() {
    let spec = RngSpec::new(2024);
    let a = gue_batch(100, 4, spec).unwrap();
    let b = gue_batch(100, 4, spec).unwrap();
    assert_eq!(a, b);
    let third = gue_unfolded_spectrum(100, &mut spec.substream(2)).unwrap();
    assert_eq!(a[2], third);
    assert_ne!(a[0], a[1]);
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| gue_batch(100, 4, spec).unwrap());
    assert_eq!(a, single);
}
