use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig, CONFIG_PREFIX};
use crate::error::CliError;

/// Metadata block written ahead of every output.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub timestamp: String,
    pub seed: u64,
    /// SHA-256 of the zero table the run read, if any.
    pub checksum: Option<String>,
    pub config: RunConfig,
}

impl Metadata {
    pub fn new(config: &RunConfig, checksum: Option<String>) -> Self {
        Self {
            tool: "gue-equiv",
            version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            seed: config.seed,
            checksum,
            config: config.clone(),
        }
    }
}

/// A numeric table with optional structured extras.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn extra<T: Serialize>(&mut self, key: &str, value: &T) {
        let v = serde_json::to_value(value).expect("extra serializes");
        self.extra.insert(key.into(), v);
    }
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn render(meta: &Metadata, report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("metadata".into(), serde_json::to_value(meta).expect("metadata serializes"));
            obj.insert("columns".into(), serde_json::to_value(&report.columns).expect("columns"));
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|&x| number(x)).collect()))
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
            for (k, v) in &report.extra {
                obj.insert(k.clone(), v.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut head = String::new();
            head.push_str(&format!("# tool: {}\n", meta.tool));
            head.push_str(&format!("# version: {}\n", meta.version));
            head.push_str(&format!("# timestamp: {}\n", meta.timestamp));
            head.push_str(&format!("# seed: {}\n", meta.seed));
            head.push_str(&format!(
                "# checksum: {}\n",
                meta.checksum.as_deref().unwrap_or("none")
            ));
            head.push_str(CONFIG_PREFIX);
            head.push_str(&serde_json::to_string(&meta.config).expect("config"));
            head.push('\n');
            for (k, v) in &report.extra {
                head.push_str(&format!("# {k}: {v}\n"));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.columns)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for row in &report.rows {
                w.write_record(row.iter().map(|x| x.to_string()))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let body = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            head.push_str(&String::from_utf8(body).expect("csv is utf-8"));
            Ok(head)
        }
    }
}

/// Write to `out`, or standard output when absent.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}
