use std::fs;
use std::path::{Path, PathBuf};

use gue_equiv::estimators::Sampler;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SynthKind {
    Poisson,
    Lattice,
    Gue,
}

/// Command parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Task {
    Unfold {
        cache: Option<PathBuf>,
    },
    Paircorr {
        height: Option<f64>,
        bin_width: f64,
        max_separation: f64,
    },
    Occupancy {
        intervals: Vec<(f64, f64)>,
        height: Option<f64>,
    },
    Spacings {
        big_k: usize,
        n: Option<usize>,
        bin_width: f64,
    },
    Sineref {
        from: f64,
        to: f64,
        step: f64,
    },
    Fujii {
        k: u32,
        interval: Option<(f64, f64)>,
        a: Option<f64>,
        height: Option<f64>,
    },
    Synth {
        kind: SynthKind,
        length: f64,
        dim: usize,
        count: usize,
    },
    Verify {
        only: Vec<u32>,
    },
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub task: Task,
    pub seed: u64,
    pub samples: usize,
    pub sampler: Sampler,
    pub format: Format,
    pub zeros: Option<PathBuf>,
    /// `NAME=VALUE` tolerance overrides, applied in order.
    pub tolerances: Vec<String>,
}

/// Prefix of the CSV header line holding the serialized config.
pub const CONFIG_PREFIX: &str = "# config: ";

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json() + "\n").map_err(|e| CliError::io(path, e))
    }

    /// Reads a config file, or the config recorded in an output file of
    /// either format.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        if let Some(line) = text.lines().find_map(|l| l.strip_prefix(CONFIG_PREFIX)) {
            return Self::from_json(line);
        }
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        match value.pointer("/metadata/config") {
            Some(inner) => serde_json::from_value(inner.clone())
                .map_err(|e| CliError::Usage(format!("config: {e}"))),
            None => serde_json::from_value(value).map_err(|e| CliError::Usage(format!("config: {e}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn configs() -> Vec<RunConfig> {
        let tasks = vec![
            Task::Unfold { cache: Some("x.bin".into()) },
            Task::Paircorr {
                height: Some(1234.5),
                bin_width: 0.1,
                max_separation: 3.0,
            },
            Task::Occupancy {
                intervals: vec![(0.0, 1.0), (1.0, 2.5)],
                height: None,
            },
            Task::Spacings {
                big_k: 2,
                n: Some(99),
                bin_width: 0.05,
            },
            Task::Sineref {
                from: 0.0,
                to: 3.0,
                step: 0.05,
            },
            Task::Fujii {
                k: 4,
                interval: None,
                a: Some(1.0 / 3.0),
                height: Some(1e4),
            },
            Task::Synth {
                kind: SynthKind::Gue,
                length: 0.1 + 0.2,
                dim: 500,
                count: 3,
            },
            Task::Verify { only: vec![1, 9] },
        ];
        tasks
            .into_iter()
            .map(|task| RunConfig {
                task,
                seed: u64::MAX,
                samples: 10_000,
                sampler: Sampler::Grid,
                format: Format::Json,
                zeros: Some("data/zeros.txt".into()),
                tolerances: vec!["fujii=0.25".into()],
            })
            .collect()
    }

    #[test]
    fn round_trips_losslessly() {
        for c in configs() {
            let back = RunConfig::from_json(&c.to_json()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn reads_config_line_from_csv_output() {
        let c = &configs()[4];
        let line = serde_json::to_string(c).unwrap();
        let dir = std::env::temp_dir().join(format!("gue-equiv-cfg-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        fs::write(&path, format!("# tool: x\n{CONFIG_PREFIX}{line}\nt,gap_det\n")).unwrap();
        assert_eq!(&RunConfig::load(&path).unwrap(), c);
        fs::remove_dir_all(&dir).unwrap();
    }
}
