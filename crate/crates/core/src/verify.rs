//! End-to-end equivalence suite.
//!
//! Each criterion returns a [`CriterionResult`]; [`run_suite`] runs a
//! selection of them in order. Criteria 5 and 7–10 need the unfolded zero
//! table and report a failure when it is absent.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    corr_fixed_scaling, corr_unfolded, corr_varying_scaling, fujii_moment, ks_distance,
    occupancy_distribution, pair_correlation_histogram, palm_spacing_check, spacing_vectors,
    windowed_count_moment, AveragingPlan, EmpiricalDistribution, Estimate, FujiiVariant,
};
use crate::pointproc::{mixed_moment, mixed_moment_by_correlations, polarized_product, PointConfiguration};
use crate::sinekernel::quadrature::QuadratureRule;
use crate::sinekernel::{
    correlation_density, fredholm_det_gap, occupation_probability, sinc, spacing_cdf,
    spacing_mean, SpacingTable,
};
use crate::synth::{gue_batch, gue_eigenvalues, lattice_spectrum, poisson_spectrum, semicircle_cdf, RngSpec};
use crate::testfn::{Profile, TestFunction};
use crate::unfold::{DensityScale, UnfoldedSpectrum};

/// Pass thresholds. Every field can be overridden by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub hadamard: f64,
    pub duality: f64,
    pub spacing_mass_lo: f64,
    pub spacing_mass_hi: f64,
    pub spacing_mean: f64,
    pub decomposition: f64,
    pub gue_spacing_ks: f64,
    pub semicircle_ks: f64,
    pub pair_correlation: f64,
    pub gap_probability: f64,
    pub sigmas: f64,
    pub fujii: f64,
    pub oracle_exact: f64,
    pub oracle_ks: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hadamard: 1e-12,
            duality: 1e-6,
            spacing_mass_lo: 0.99,
            spacing_mass_hi: 1.001,
            spacing_mean: 0.01,
            decomposition: 1e-12,
            gue_spacing_ks: 0.03,
            semicircle_ks: 0.05,
            pair_correlation: 0.05,
            gap_probability: 0.02,
            sigmas: 3.0,
            fujii: 0.2,
            oracle_exact: 1e-3,
            oracle_ks: 0.02,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 14] = [
        "hadamard",
        "duality",
        "spacing_mass_lo",
        "spacing_mass_hi",
        "spacing_mean",
        "decomposition",
        "gue_spacing_ks",
        "semicircle_ks",
        "pair_correlation",
        "gap_probability",
        "sigmas",
        "fujii",
        "oracle_exact",
        "oracle_ks",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "hadamard" => &mut self.hadamard,
            "duality" => &mut self.duality,
            "spacing_mass_lo" => &mut self.spacing_mass_lo,
            "spacing_mass_hi" => &mut self.spacing_mass_hi,
            "spacing_mean" => &mut self.spacing_mean,
            "decomposition" => &mut self.decomposition,
            "gue_spacing_ks" => &mut self.gue_spacing_ks,
            "semicircle_ks" => &mut self.semicircle_ks,
            "pair_correlation" => &mut self.pair_correlation,
            "gap_probability" => &mut self.gap_probability,
            "sigmas" => &mut self.sigmas,
            "fujii" => &mut self.fujii,
            "oracle_exact" => &mut self.oracle_exact,
            "oracle_ks" => &mut self.oracle_ks,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::InvalidParameter(format!("tolerance {name} = {value}")));
        }
        match self.slot(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::InvalidParameter(format!("unknown tolerance {name}"))),
        }
    }

    /// Apply a `NAME=VALUE` override.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected NAME=VALUE, got {assignment}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("tolerance value {value}")))?;
        self.set(name.trim(), value)
    }
}

/// Sizes and seed of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// `t`-samples per average.
    pub samples: usize,
    pub gue_matrices: usize,
    pub gue_dim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            samples: 10_000,
            gue_matrices: 100,
            gue_dim: 500,
        }
    }
}

impl SuiteConfig {
    fn seed_for(&self, criterion: u64, stream: u64) -> u64 {
        self.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(criterion << 32 | stream)
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    /// Which of the equivalent statements the criterion exercises.
    pub statement: String,
    pub passed: bool,
    /// Whether a failure makes the suite fail.
    pub fatal: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: Option<f64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = match (self.passed, self.fatal) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "WARN",
        };
        format!(
            "[{status}] {:>2} {:<34} {:<12} {:>8.2}s  {}",
            self.id, self.name, self.statement, self.seconds, self.detail
        )
    }
}

/// Number of criteria.
pub const CRITERIA: u32 = 11;

const NAMES: [(&str, &str, Option<f64>); 11] = [
    ("Hadamard bound", "density", Some(5.0)),
    ("series/determinant duality", "reference", Some(30.0)),
    ("spacing law normalization", "reference", Some(60.0)),
    ("moment decomposition", "(ii)", Some(5.0)),
    ("Palm consistency", "(iii)<->(iv)", Some(30.0)),
    ("GUE surrogate", "(ii),(iv)", Some(300.0)),
    ("zeta pair correlation", "(ii)", None),
    ("occupancy vs gap probability", "(iii)", Some(60.0)),
    ("correlation forms agree", "(i)<->(ii)", Some(300.0)),
    ("Fujii stability", "(ii)->(iii)", None),
    ("Poisson and lattice oracles", "oracle", None),
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn finish(id: u32, start: Instant, result: Result<Outcome>) -> CriterionResult {
    let (name, statement, budget) = NAMES[id as usize - 1];
    let seconds = start.elapsed().as_secs_f64();
    let (mut passed, mut detail) = match result {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(b) = budget {
        if seconds > b {
            passed = false;
            detail.push_str(&format!("; over budget {b}s"));
        }
    }
    CriterionResult {
        id,
        name: name.into(),
        statement: statement.into(),
        passed,
        fatal: id != 7,
        detail,
        seconds,
        budget_seconds: budget,
    }
}

fn need_zeros(zeros: Option<&UnfoldedSpectrum>) -> Result<&UnfoldedSpectrum> {
    zeros.ok_or_else(|| Error::InsufficientData("zero table required".into()))
}

/// Random node sets of size 1..=6 in `[-5, 5]`; a quarter of them carry a
/// near-coincident pair.
pub fn criterion_1(cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let mut rng = RngSpec::new(cfg.seed_for(1, 0)).rng();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let sets = 10_000;
        for i in 0..sets {
            let k = rng.random_range(1..=6usize);
            let mut nodes: Vec<f64> = (0..k).map(|_| rng.random_range(-5.0..5.0)).collect();
            if k > 1 && i % 4 == 0 {
                nodes[1] = nodes[0] + rng.random_range(-1e-6..1e-6);
            }
            let d = correlation_density(&nodes)?;
            lo = lo.min(d);
            hi = hi.max(d);
        }
        let passed = lo >= -tol.hadamard && hi <= 1.0 + tol.hadamard;
        outcome(passed, format!("{sets} sets, density in [{lo:.3e}, {hi:.15}]"))
    })();
    finish(1, start, result)
}

pub fn criterion_2(_cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let mut worst: f64 = 0.0;
        for s in [0.25, 0.5, 1.0, 1.5] {
            let series = occupation_probability(&[(0.0, s)], &[0])?.value;
            let det = fredholm_det_gap(s)?;
            worst = worst.max((series - det).abs());
        }
        outcome(worst < tol.duality, format!("max |series - det| = {worst:.2e}"))
    })();
    finish(2, start, result)
}

pub fn criterion_3(_cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let mass = spacing_cdf(5.0)?;
        let mean = spacing_mean(5.0)?;
        let passed = mass >= tol.spacing_mass_lo
            && mass <= tol.spacing_mass_hi
            && (mean - 1.0).abs() <= tol.spacing_mean;
        outcome(passed, format!("mass = {mass:.9}, mean = {mean:.9}"))
    })();
    finish(3, start, result)
}

fn random_profile<R: Rng>(rng: &mut R) -> Profile {
    let c = rng.random_range(-2.0..2.0);
    let w = rng.random_range(0.3..2.5);
    match rng.random_range(0..3) {
        0 => Profile::tent(c, w),
        1 => Profile::bump(c, w),
        _ => Profile::indicator(c - w / 2.0, c + w / 2.0, 0.1),
    }
}

/// `Π Σ f_i` against its correlation expansion, and the polarization identity.
pub fn criterion_4(cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let mut rng = RngSpec::new(cfg.seed_for(4, 0)).rng();
        let mut worst: f64 = 0.0;
        let mut worst_polar: f64 = 0.0;
        for _ in 0..100 {
            let n = rng.random_range(0..=14usize);
            let mut pts: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            if n > 2 {
                pts[1] = pts[0];
            }
            pts.sort_by(f64::total_cmp);
            let config = PointConfiguration::with_window(pts, -3.0, 3.0)?;
            let k = rng.random_range(1..=4usize);
            let fs: Vec<Profile> = (0..k).map(|_| random_profile(&mut rng)).collect();
            let direct = mixed_moment(&config, &fs);
            let expanded = mixed_moment_by_correlations(&config, &fs);
            worst = worst.max((direct - expanded).abs() / direct.abs().max(1.0));
            let stats: Vec<f64> = fs
                .iter()
                .map(|f| crate::pointproc::linear_statistic(&config, f))
                .collect();
            let polar = polarized_product(&stats);
            worst_polar = worst_polar.max((polar - direct).abs() / direct.abs().max(1.0));
        }
        let passed = worst <= tol.decomposition && worst_polar <= tol.decomposition;
        outcome(
            passed,
            format!("max rel. error {worst:.1e}, polarization {worst_polar:.1e}"),
        )
    })();
    finish(4, start, result)
}

pub fn criterion_5(zeros: Option<&UnfoldedSpectrum>, cfg: &SuiteConfig, _tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let zeros = need_zeros(zeros)?;
        let k = 3;
        let z = palm_spacing_check(zeros, k, zeros.len() - k)?;
        let mut rng = RngSpec::new(cfg.seed_for(5, 0)).rng();
        let poisson = UnfoldedSpectrum::synthetic(poisson_spectrum(2e4, &mut rng)?);
        let p = palm_spacing_check(&poisson, k, poisson.len() - k)?;
        let lattice = UnfoldedSpectrum::synthetic(lattice_spectrum(20_000, &mut rng)?);
        let l = palm_spacing_check(&lattice, k, lattice.len() - k)?;
        let passed = z.passed() && p.passed() && l.passed() && l.distance == 0.0;
        outcome(
            passed,
            format!(
                "K/N·d: zeros {:.3}, Poisson {:.3}, lattice d = {}",
                z.distance / z.bound,
                p.distance / p.bound,
                l.distance
            ),
        )
    })();
    finish(5, start, result)
}

pub fn criterion_6(cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let spectra = gue_batch(cfg.gue_dim, cfg.gue_matrices, RngSpec::new(cfg.seed_for(6, 0)))?;
        let mut spacings: Vec<f64> = spectra
            .iter()
            .flat_map(|s| {
                s.unfolded()
                    .points()
                    .windows(2)
                    .map(|w| w[1] - w[0])
                    .collect::<Vec<_>>()
            })
            .collect();
        let table = SpacingTable::new(0.02, 5.0)?;
        let d_spacing = ks_distance(&mut spacings, |s| table.cdf(s));
        let n = 2 * cfg.gue_dim;
        let radius = (2.0 * n as f64).sqrt();
        let mut ev: Vec<f64> = gue_eigenvalues(n, &mut RngSpec::new(cfg.seed_for(6, 1)).rng())?
            .iter()
            .map(|&x| x / radius)
            .collect();
        let d_sc = ks_distance(&mut ev, semicircle_cdf);
        let passed = d_spacing < tol.gue_spacing_ks && d_sc < tol.semicircle_ks;
        outcome(
            passed,
            format!(
                "{} spacings KS = {d_spacing:.4}, semicircle KS = {d_sc:.4} (n = {n})",
                spacings.len()
            ),
        )
    })();
    finish(6, start, result)
}

/// `∫_a^b (1 - S(u)²) du`.
pub fn pair_correlation_mass(a: f64, b: f64) -> f64 {
    let rule = QuadratureRule::gauss_legendre(24);
    rule.integrate(a, b, |u| {
        let s = sinc(u);
        1.0 - s * s
    })
}

pub fn criterion_7(zeros: Option<&UnfoldedSpectrum>, _cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let zeros = need_zeros(zeros)?;
        let height = zeros.unfolded().window_end() - 3.0;
        let hist = pair_correlation_histogram(zeros, height, 0.1, 3.0)?;
        let EmpiricalDistribution::Histogram { edges, masses, .. } = hist else {
            return Err(Error::InvalidParameter("histogram expected".into()));
        };
        let (mut worst, mut at) = (0.0f64, 0.0);
        for (i, m) in masses.iter().enumerate() {
            let d = (m - pair_correlation_mass(edges[i], edges[i + 1])).abs();
            if d > worst {
                worst = d;
                at = edges[i];
            }
        }
        outcome(
            worst < tol.pair_correlation,
            format!("statistical check on low zeros: max bin deviation {worst:.4} at ({at:.1}, {:.1}]", at + 0.1),
        )
    })();
    finish(7, start, result)
}

pub fn criterion_8(zeros: Option<&UnfoldedSpectrum>, cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let zeros = need_zeros(zeros)?;
        let height = zeros.unfolded().window_end() - 1.0;
        let plan = AveragingPlan::monte_carlo((0.0, height), cfg.samples, cfg.seed_for(8, 0));
        let occ = occupancy_distribution(zeros, &[(0.0, 1.0)], height, &plan)?;
        let kept = (cfg.samples - occ.skipped) as f64;
        // skipped samples hold no observation; renormalize to the kept ones
        let empirical = occ.distribution.pmf_mass(&[0]) * cfg.samples as f64 / kept;
        let reference = fredholm_det_gap(1.0)?;
        let d = (empirical - reference).abs();
        outcome(
            d < tol.gap_probability,
            format!("P(no point) = {empirical:.4} vs {reference:.4}"),
        )
    })();
    finish(8, start, result)
}

/// Test functions of criterion 9: a unit tent for `k = 1` and a pair function
/// localized near separation 1 for `k = 2`.
pub fn equivalence_test_functions() -> (TestFunction, TestFunction) {
    (
        TestFunction::single(Profile::unit_tent(0.0, 1.0)),
        TestFunction::pair(Profile::unit_tent(0.0, 1.0), Profile::tent(1.0, 0.5)),
    )
}

/// The three correlation forms on the zero table for one test function, at
/// the largest heights the table supports.
pub fn correlation_forms(
    zeros: &UnfoldedSpectrum,
    k: usize,
    f: &TestFunction,
    plan: &AveragingPlan,
    scale: DensityScale,
) -> Result<[Estimate; 3]> {
    let raw = zeros.raw();
    let end = raw.window_end();
    let margin = 2.0 * f.reach() / scale.eval(end)?;
    let top = end - margin;
    let i = corr_varying_scaling(raw, k, f, top, &plan.with_window((0.0, top)), scale)?;
    let half = top / 2.0;
    let ii = corr_fixed_scaling(raw, k, f, half, &plan.with_window((half, top)), scale)?;
    let utop = zeros.unfolded().window_end() - 2.0 * f.reach();
    let iii = corr_unfolded(zeros, k, f, utop, &plan.with_window((0.0, utop)))?;
    Ok([i, ii, iii])
}

pub fn criterion_9(zeros: Option<&UnfoldedSpectrum>, cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let zeros = need_zeros(zeros)?;
        let (f1, f2) = equivalence_test_functions();
        let mut passed = true;
        let mut parts = Vec::new();
        for (k, f) in [(1usize, &f1), (2, &f2)] {
            let plan = AveragingPlan::monte_carlo((0.0, 1.0), cfg.samples, cfg.seed_for(9, k as u64));
            let [i, ii, iii] = correlation_forms(zeros, k, f, &plan, DensityScale::LogOverTwoPi)?;
            let z = [i.z_score(&ii), i.z_score(&iii), ii.z_score(&iii)];
            passed &= z.iter().all(|&z| z <= tol.sigmas);
            let [si, sii, _] = correlation_forms(zeros, k, f, &plan, DensityScale::SmoothCount)?;
            parts.push(format!(
                "k={k}: {:.4}/{:.4}/{:.4} (se {:.4}) z = {:.1},{:.1},{:.1}; smooth-count {:.4}/{:.4}",
                i.mean, ii.mean, iii.mean, iii.std_error, z[0], z[1], z[2], si.mean, sii.mean
            ));
        }
        outcome(passed, parts.join("; "))
    })();
    finish(9, start, result)
}

pub fn criterion_10(zeros: Option<&UnfoldedSpectrum>, _cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let zeros = need_zeros(zeros)?;
        let height = zeros.unfolded().window_end() - 1.0;
        let variant = FujiiVariant::Unfolded { interval: (0.0, 1.0) };
        let first = fujii_moment(zeros, variant, 4, height / 2.0)?;
        let second = windowed_count_moment(zeros.unfolded(), (0.0, 1.0), 4, (height / 2.0, height))?;
        let rel = (first - second).abs() / first.min(second);
        outcome(
            rel < tol.fujii,
            format!("halves {first:.4} / {second:.4}, relative difference {rel:.3}"),
        )
    })();
    finish(10, start, result)
}

fn within_sigmas(e: &Estimate, expected: f64, sigmas: f64) -> bool {
    (e.mean - expected).abs() <= sigmas * e.std_error
}

/// Poisson: all three correlation forms, occupancy and spacing law against
/// their closed forms. Lattice: exact spacings, occupancy and correlations.
pub fn criterion_11(cfg: &SuiteConfig, tol: &Tolerances) -> CriterionResult {
    let start = Instant::now();
    let result = (|| {
        let mut rng = RngSpec::new(cfg.seed_for(11, 0)).rng();
        let mut failures = Vec::new();
        let (f1, f2) = equivalence_test_functions();
        let pair_integral = f2.lebesgue_integral().unwrap_or(f64::NAN);

        let length = 4e4;
        let poisson = UnfoldedSpectrum::synthetic(poisson_spectrum(length, &mut rng)?);
        let unit = DensityScale::Constant(1.0);
        let mc = |stream: u64, window: (f64, f64)| {
            AveragingPlan::monte_carlo(window, cfg.samples, cfg.seed_for(11, stream))
        };
        let top = length - 5.0;
        for (k, f, expected) in [(1usize, &f1, 1.0), (2, &f2, pair_integral)] {
            let s = k as u64 * 10;
            let forms = [
                corr_varying_scaling(poisson.raw(), k, f, top, &mc(s, (0.0, top)), unit)?,
                corr_fixed_scaling(poisson.raw(), k, f, top / 2.0, &mc(s + 1, (top / 2.0, top)), unit)?,
                corr_unfolded(&poisson, k, f, top, &mc(s + 2, (0.0, top)))?,
            ];
            for (name, e) in ["i", "ii", "iii"].iter().zip(&forms) {
                if !within_sigmas(e, expected, tol.sigmas) {
                    failures.push(format!("Poisson k={k} ({name}) {:.4} vs {expected}", e.mean));
                }
            }
        }
        let plan = mc(30, (0.0, top));
        let occ = occupancy_distribution(&poisson, &[(0.0, 1.0)], top, &plan)?;
        let p0 = occ.distribution.pmf_mass(&[0]);
        let e0 = (-1.0f64).exp();
        let se0 = (e0 * (1.0 - e0) / cfg.samples as f64).sqrt();
        if (p0 - e0).abs() > tol.sigmas * se0 {
            failures.push(format!("Poisson P(0) = {p0:.4}"));
        }
        let n = poisson.len() - 1;
        let EmpiricalDistribution::Samples { vectors, .. } = spacing_vectors(&poisson, 1, n)? else {
            return Err(Error::InvalidParameter("samples expected".into()));
        };
        let mut gaps: Vec<f64> = vectors.iter().map(|v| v[0]).collect();
        let ks = ks_distance(&mut gaps, |s| 1.0 - (-s).exp());
        if ks >= tol.oracle_ks {
            failures.push(format!("Poisson spacing KS {ks:.4}"));
        }

        let lattice = UnfoldedSpectrum::synthetic(lattice_spectrum(20_000, &mut rng)?);
        let n = lattice.len() - 3;
        let EmpiricalDistribution::Samples { vectors, .. } = spacing_vectors(&lattice, 3, n)? else {
            return Err(Error::InvalidParameter("samples expected".into()));
        };
        if vectors.iter().any(|v| v != &[1.0, 2.0, 3.0]) {
            failures.push("lattice spacings not (1, 2, 3)".into());
        }
        let ltop = lattice.unfolded().window_end() - 5.0;
        let grid = AveragingPlan::grid((0.0, ltop), cfg.samples);
        let occ = occupancy_distribution(&lattice, &[(0.0, 0.5)], ltop, &grid)?;
        let (q0, q1) = (occ.distribution.pmf_mass(&[0]), occ.distribution.pmf_mass(&[1]));
        if (q0 - 0.5).abs() > tol.oracle_exact || (q1 - 0.5).abs() > tol.oracle_exact {
            failures.push(format!("lattice occupancy {q0:.4}/{q1:.4}"));
        }
        let e1 = corr_unfolded(&lattice, 1, &f1, ltop, &grid)?;
        // Σ_{d ≠ 0} g(d) = g(1) = 1
        let e2 = corr_unfolded(&lattice, 2, &f2, ltop, &grid)?;
        if (e1.mean - 1.0).abs() > tol.oracle_exact || (e2.mean - 1.0).abs() > tol.oracle_exact {
            failures.push(format!("lattice correlations {:.5}/{:.5}", e1.mean, e2.mean));
        }
        let detail = if failures.is_empty() {
            format!("Poisson spacing KS {ks:.4}, P(0) = {p0:.4}; lattice exact")
        } else {
            failures.join("; ")
        };
        outcome(failures.is_empty(), detail)
    })();
    finish(11, start, result)
}

/// Run the criteria listed in `only` (all when empty), in ascending order.
pub fn run_suite(
    zeros: Option<&UnfoldedSpectrum>,
    cfg: &SuiteConfig,
    tol: &Tolerances,
    only: &[u32],
) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for id in 1..=CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        out.push(run_criterion(id, zeros, cfg, tol));
    }
    out
}

pub fn run_criterion(
    id: u32,
    zeros: Option<&UnfoldedSpectrum>,
    cfg: &SuiteConfig,
    tol: &Tolerances,
) -> CriterionResult {
    match id {
        1 => criterion_1(cfg, tol),
        2 => criterion_2(cfg, tol),
        3 => criterion_3(cfg, tol),
        4 => criterion_4(cfg, tol),
        5 => criterion_5(zeros, cfg, tol),
        6 => criterion_6(cfg, tol),
        7 => criterion_7(zeros, cfg, tol),
        8 => criterion_8(zeros, cfg, tol),
        9 => criterion_9(zeros, cfg, tol),
        10 => criterion_10(zeros, cfg, tol),
        11 => criterion_11(cfg, tol),
        _ => finish_unknown(id),
    }
}

fn finish_unknown(id: u32) -> CriterionResult {
    CriterionResult {
        id,
        name: "unknown".into(),
        statement: String::new(),
        passed: false,
        fatal: true,
        detail: format!("no criterion {id}"),
        seconds: 0.0,
        budget_seconds: None,
    }
}

/// True when every fatal criterion passed.
pub fn suite_passed(results: &[CriterionResult]) -> bool {
    results.iter().all(|r| r.passed || !r.fatal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        t.apply("fujii=0.3").unwrap();
        assert_eq!(t.fujii, 0.3);
        assert!(t.apply("nope=1").is_err());
        assert!(t.apply("fujii").is_err());
        for name in Tolerances::NAMES {
            assert!(t.set(name, 0.5).is_ok(), "{name}");
        }
    }

    #[test]
    fn pair_mass_small_bin() {
        // 1 - S(u)^2 ≈ π²u²/3 near 0
        let m = pair_correlation_mass(0.0, 0.01);
        assert!((m - PI * PI * 1e-6 / 9.0).abs() < 1e-10);
    }
}
