//! CSV and JSON persistence of experiment runs.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

use super::config::{ExperimentConfig, Format};
use super::run::{RunOutput, TrialRecord};
use super::stats::SummaryStats;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 8] = ["trial", "family", "n", "d", "k", "seed", "statistic", "elapsed_ms"];

fn ser_err(e: impl std::fmt::Display) -> Error {
    Error::Serialization(e.to_string())
}

/// One row per record with LF line endings; `k` is empty when unset.
pub fn to_csv(records: &[TrialRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).map_err(ser_err)?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.family.to_string(),
            r.n.to_string(),
            r.d.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.seed.to_string(),
            r.statistic.to_string(),
            r.elapsed_ms.to_string(),
        ])
        .map_err(ser_err)?;
    }
    let bytes = w.into_inner().map_err(ser_err)?;
    String::from_utf8(bytes).map_err(ser_err)
}

#[derive(Serialize)]
struct JsonRun<'a> {
    config: &'a ExperimentConfig,
    records: &'a [TrialRecord],
    summary: Option<&'a SummaryStats>,
}

/// `{config, records, summary}`, pretty-printed with a trailing newline.
pub fn to_json(output: &RunOutput) -> Result<String> {
    let run = JsonRun { config: &output.config, records: &output.records, summary: output.summary.as_ref() };
    let mut s = serde_json::to_string_pretty(&run).map_err(ser_err)?;
    s.push('\n');
    Ok(s)
}

pub fn render(output: &RunOutput, format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(&output.records),
        Format::Json => to_json(output),
    }
}

/// Writes the run to `path`.
pub fn export(output: &RunOutput, path: &Path, format: Format) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(Error::InvalidInput("output path is empty".into()));
    }
    let text = render(output, format)?;
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Reads the records back from a CSV export.
pub fn read_csv_records(text: &str) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(ser_err)?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    r.records().map(|rec| rec.map_err(ser_err)).collect()
}
