use std::path::{Path, PathBuf};

use gue_equiv::estimators::{
    fujii_moment, occupancy_distribution, pair_correlation_histogram, palm_spacing_check,
    spacing_vectors, AveragingPlan, EmpiricalDistribution, FujiiVariant, Sampler,
};
use gue_equiv::sinekernel::{occupation_probability, sine_reference_table};
use gue_equiv::synth::{gue_batch, lattice_spectrum, poisson_spectrum, RngSpec};
use gue_equiv::verify::{pair_correlation_mass, run_suite, suite_passed, SuiteConfig, Tolerances};
use gue_equiv::zeros::{ingest_zeros, unfold_with_cache, ZeroTable};
use gue_equiv::UnfoldedSpectrum;

use crate::config::{RunConfig, SynthKind, Task};
use crate::error::CliError;
use crate::output::{emit, render, Metadata, Report};

pub const DEFAULT_ZEROS: &str = "data/zeros_100k.txt";

struct Loaded {
    table: ZeroTable,
    spectrum: UnfoldedSpectrum,
}

fn load(config: &RunConfig, cache: Option<&Path>) -> Result<Loaded, CliError> {
    let path: PathBuf = config
        .zeros
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_ZEROS));
    if !path.exists() {
        return Err(CliError::io(&path, "zero table not found"));
    }
    let table = ingest_zeros(&path)?;
    let spectrum = match cache {
        Some(c) => unfold_with_cache(&table, c)?,
        None => table.unfold()?,
    };
    Ok(Loaded { table, spectrum })
}

fn plan(config: &RunConfig, window: (f64, f64)) -> AveragingPlan {
    match config.sampler {
        Sampler::Grid => AveragingPlan::grid(window, config.samples),
        Sampler::MonteCarlo => AveragingPlan::monte_carlo(window, config.samples, config.seed),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs one configured command and writes its output.
pub fn execute(config: &RunConfig, out: Option<&Path>) -> Result<(), CliError> {
    if config.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let (report, checksum) = match &config.task {
        Task::Unfold { cache } => {
            let z = load(config, cache.as_deref())?;
            let mut r = Report::new(&["n", "gamma", "unfolded"]);
            for (i, (g, u)) in z
                .spectrum
                .raw()
                .points()
                .iter()
                .zip(z.spectrum.unfolded().points())
                .enumerate()
            {
                r.push(vec![(i + 1) as f64, *g, *u]);
            }
            (r, Some(z.table.checksum().to_string()))
        }
        Task::Paircorr {
            height,
            bin_width,
            max_separation,
        } => {
            let z = load(config, None)?;
            let h = height.unwrap_or(z.spectrum.unfolded().window_end() - max_separation);
            let hist = pair_correlation_histogram(&z.spectrum, h, *bin_width, *max_separation)?;
            let EmpiricalDistribution::Histogram { edges, masses, sample_count } = hist else {
                unreachable!("pair correlation is a histogram")
            };
            let mut r = Report::new(&["lo", "hi", "mass", "reference"]);
            for (i, m) in masses.iter().enumerate() {
                let (a, b) = (edges[i], edges[i + 1]);
                r.push(vec![a, b, *m, pair_correlation_mass(a, b)]);
            }
            r.extra("height", &h);
            r.extra("base_points", &sample_count);
            (r, Some(z.table.checksum().to_string()))
        }
        Task::Occupancy { intervals, height } => {
            if intervals.is_empty() {
                return Err(usage("occupancy needs at least one --interval"));
            }
            let z = load(config, None)?;
            let reach = intervals.iter().map(|i| i.1).fold(f64::NEG_INFINITY, f64::max);
            let h = height.unwrap_or(z.spectrum.unfolded().window_end() - reach.max(0.0));
            let occ = occupancy_distribution(&z.spectrum, intervals, h, &plan(config, (0.0, h)))?;
            let mut cols: Vec<String> = (1..=intervals.len()).map(|j| format!("n{j}")).collect();
            cols.push("empirical".into());
            cols.push("sine".into());
            let mut r = Report {
                columns: cols,
                ..Report::default()
            };
            if let EmpiricalDistribution::Pmf { masses, .. } = &occ.distribution {
                for (key, m) in masses {
                    let mut row: Vec<f64> = key.iter().map(|&c| c as f64).collect();
                    row.push(*m);
                    row.push(
                        occupation_probability(intervals, key).map_or(f64::NAN, |o| o.value),
                    );
                    r.push(row);
                }
            }
            r.extra("height", &h);
            r.extra("skipped", &occ.skipped);
            r.extra("marginal_means", &occ.marginal_means);
            (r, Some(z.table.checksum().to_string()))
        }
        Task::Spacings { big_k, n, bin_width } => {
            if !(*bin_width > 0.0) {
                return Err(usage("--bins must be positive"));
            }
            let z = load(config, None)?;
            let n = n.unwrap_or_else(|| z.spectrum.len().saturating_sub(*big_k));
            let EmpiricalDistribution::Samples { vectors, .. } =
                spacing_vectors(&z.spectrum, *big_k, n)?
            else {
                unreachable!("spacing vectors are samples")
            };
            let keys: Vec<Vec<usize>> = vectors
                .iter()
                .map(|v| v.iter().map(|&s| (s / bin_width).floor() as usize).collect())
                .collect();
            let pmf = EmpiricalDistribution::pmf_from_counts(keys)?;
            let mut cols: Vec<String> = (1..=*big_k).map(|j| format!("s{j}_lo")).collect();
            cols.push("mass".into());
            let mut r = Report {
                columns: cols,
                ..Report::default()
            };
            if let EmpiricalDistribution::Pmf { masses, .. } = &pmf {
                for (key, m) in masses {
                    let mut row: Vec<f64> = key.iter().map(|&i| i as f64 * bin_width).collect();
                    row.push(*m);
                    r.push(row);
                }
            }
            r.extra("distribution", &pmf);
            r.extra("palm", &palm_spacing_check(&z.spectrum, *big_k, n)?);
            (r, Some(z.table.checksum().to_string()))
        }
        Task::Sineref { from, to, step } => {
            let mut r = Report::new(&["t", "gap_det", "p2", "cdf"]);
            for row in sine_reference_table(*from, *to, *step)? {
                r.push(vec![row.t, row.gap_det, row.p2, row.cdf]);
            }
            (r, None)
        }
        Task::Fujii {
            k,
            interval,
            a,
            height,
        } => {
            let z = load(config, None)?;
            let (variant, h) = match (interval, a) {
                (Some(_), Some(_)) => return Err(usage("give either --interval or --a")),
                (Some(i), None) => (
                    FujiiVariant::Unfolded { interval: *i },
                    height.unwrap_or(z.spectrum.unfolded().window_end() - i.1.max(0.0)),
                ),
                (None, a) => {
                    let a = a.unwrap_or(1.0);
                    let end = z.spectrum.raw().window_end();
                    (FujiiVariant::Height { a }, height.unwrap_or((end - a) / 2.0))
                }
            };
            let value = fujii_moment(&z.spectrum, variant, *k, h)?;
            let mut r = Report::new(&["k", "T", "moment"]);
            r.push(vec![*k as f64, h, value]);
            r.extra("variant", &variant);
            (r, Some(z.table.checksum().to_string()))
        }
        Task::Synth {
            kind,
            length,
            dim,
            count,
        } => {
            let spec = RngSpec::new(config.seed);
            let spectra: Vec<Vec<f64>> = match kind {
                SynthKind::Poisson => {
                    vec![poisson_spectrum(*length, &mut spec.rng())?.points().to_vec()]
                }
                SynthKind::Lattice => {
                    if !(*length >= 1.0 && length.fract() == 0.0) {
                        return Err(usage("lattice length --T must be a positive integer"));
                    }
                    vec![lattice_spectrum(*length as u64, &mut spec.rng())?
                        .points()
                        .to_vec()]
                }
                SynthKind::Gue => gue_batch(*dim, *count, spec)?
                    .iter()
                    .map(|s| s.unfolded().points().to_vec())
                    .collect(),
            };
            let mut r = Report::new(&["sample", "index", "value"]);
            for (s, pts) in spectra.iter().enumerate() {
                for (i, &p) in pts.iter().enumerate() {
                    r.push(vec![s as f64, (i + 1) as f64, p]);
                }
            }
            (r, None)
        }
        Task::Verify { only } => return verify(config, only, out),
    };
    let meta = Metadata::new(config, checksum);
    emit(&render(&meta, &report, config.format)?, out)
}

fn verify(config: &RunConfig, only: &[u32], out: Option<&Path>) -> Result<(), CliError> {
    let mut tol = Tolerances::default();
    for t in &config.tolerances {
        tol.apply(t).map_err(|e| usage(e.to_string()))?;
    }
    let suite = SuiteConfig {
        seed: config.seed,
        samples: config.samples,
        ..SuiteConfig::default()
    };
    let needs_zeros = only.is_empty() || only.iter().any(|id| [5, 7, 8, 9, 10].contains(id));
    let zeros = if needs_zeros {
        Some(load(config, None)?)
    } else {
        None
    };
    let results = run_suite(zeros.as_ref().map(|z| &z.spectrum), &suite, &tol, only);
    for r in &results {
        println!("{}", r.line());
    }
    let passed = suite_passed(&results);
    println!(
        "{} of {} criteria passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    if let Some(path) = out {
        let mut report = Report::new(&["id", "passed", "fatal", "seconds"]);
        for r in &results {
            report.push(vec![
                r.id as f64,
                r.passed as u8 as f64,
                r.fatal as u8 as f64,
                r.seconds,
            ]);
        }
        report.extra("results", &results);
        let meta = Metadata::new(config, zeros.map(|z| z.table.checksum().to_string()));
        emit(&render(&meta, &report, config.format)?, Some(path))?;
    }
    if passed {
        Ok(())
    } else {
        let failed: Vec<String> = results
            .iter()
            .filter(|r| !r.passed && r.fatal)
            .map(|r| r.id.to_string())
            .collect();
        Err(CliError::Verification(format!("criteria {}", failed.join(", "))))
    }
}
