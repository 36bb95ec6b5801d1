use suilab_core::dsl::format_number;
use suilab_core::SchemeReport;

use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 6] = ["param", "observable", "signal_power", "noise_power", "snr", "snr_db"];

/// CSV body preceded by `#` comment lines.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), ..Self::default() }
    }

    pub fn comment(&mut self, line: impl Into<String>) -> &mut Self {
        self.comments.push(line.into());
        self
    }

    pub fn push_numbers(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|v| format_number(*v)).collect());
    }

    /// One row per observable of `report`, keyed by `x`.
    pub fn push_report(&mut self, x: f64, report: &SchemeReport<f64>, only: Option<&[&str]>) {
        for o in &report.observables {
            if only.is_some_and(|keep| !keep.contains(&o.label.as_str())) {
                continue;
            }
            self.rows.push(vec![
                format_number(x),
                o.label.clone(),
                format_number(o.signal_power),
                format_number(o.noise_power),
                format_number(o.snr),
                format_number(o.snr_db),
            ]);
        }
    }

    pub fn to_bytes(&self) -> CliResult<Vec<u8>> {
        let mut buf = Vec::new();
        for c in &self.comments {
            buf.extend_from_slice(b"# ");
            buf.extend_from_slice(c.as_bytes());
            buf.push(b'\n');
        }
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(&self.header).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| csv_err(e.into_error().into()))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io { path: "<csv>".into(), source: std::io::Error::other(e) }
}

/// `key=value` comment lines for every reported parameter, sorted by key.
pub fn param_comments(report: &SchemeReport<f64>, skip: &[&str]) -> Vec<String> {
    let value = serde_json::to_value(&report.params).unwrap_or_default();
    let Some(map) = value.as_object() else {
        return Vec::new();
    };
    let mut keys: Vec<&String> = map.keys().collect();
    keys.sort();
    keys.into_iter()
        .filter(|k| !skip.contains(&k.as_str()))
        .map(|k| format!("{k}={}", json_scalar(&map[k])))
        .collect()
}

fn json_scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), format_number),
        serde_json::Value::Array(a) => a.iter().map(json_scalar).collect::<Vec<_>>().join(";"),
        serde_json::Value::Null => "default".into(),
        other => other.to_string(),
    }
}
