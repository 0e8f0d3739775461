use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::error::{Error, Result};
use crate::selection::Method;

/// Column order of the result CSV.
pub const CSV_HEADER: [&str; 8] = ["dataset", "method", "budget", "spread", "seeds", "cost", "select_ms", "shapley_ms"];

/// One (method, budget) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub dataset: String,
    pub method: Method,
    pub budget: u64,
    pub spread: f64,
    /// `|S|`.
    pub seeds: usize,
    pub cost: u64,
    pub select_ms: f64,
    /// Shapley estimation time, for the Shapley-driven methods only.
    pub shapley_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds_file: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Complete,
    /// The run stopped early; only the rows before the failure are present.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub status: RunStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Resolved configuration; feeding it back in repeats the run.
    pub config: ExperimentConfig,
    /// Number of Shapley estimations performed.
    pub shapley_runs: usize,
    pub rows: Vec<ResultRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn ms(v: f64) -> String {
    format!("{v:.3}")
}

pub fn emit_results<W: Write>(table: &ResultTable, format: Format, out: W) -> Result<()> {
    if table.rows.is_empty() && table.status == RunStatus::Complete {
        return Err(Error::domain("no result rows to emit"));
    }
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let fail = |e: csv::Error| Error::domain(format!("writing results: {e}"));
            w.write_record(CSV_HEADER).map_err(fail)?;
            for r in &table.rows {
                w.write_record([
                    r.dataset.clone(),
                    r.method.to_string(),
                    r.budget.to_string(),
                    r.spread.to_string(),
                    r.seeds.to_string(),
                    r.cost.to_string(),
                    ms(r.select_ms),
                    r.shapley_ms.map(ms).unwrap_or_default(),
                ])
                .map_err(fail)?;
            }
            w.flush().map_err(|e| Error::domain(format!("writing results: {e}")))
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, table).map_err(|e| Error::domain(format!("writing results: {e}")))?;
            writeln!(out).map_err(|e| Error::domain(format!("writing results: {e}")))
        }
    }
}

/// Writes to `path`; a partial table goes to `<path>.partial` instead so a
/// truncated run never masquerades as a finished one.
pub fn write_results(table: &ResultTable, format: Format, path: &Path) -> Result<()> {
    let target = match table.status {
        RunStatus::Complete => path.to_path_buf(),
        RunStatus::Partial => {
            let mut p = path.as_os_str().to_owned();
            p.push(".partial");
            p.into()
        }
    };
    if let Some(dir) = target.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = std::fs::File::create(&target).map_err(|e| Error::io(&target, e))?;
    let mut out = std::io::BufWriter::new(file);
    emit_results(table, format, &mut out)?;
    out.flush().map_err(|e| Error::io(&target, e))
}

pub fn read_results_json(text: &str) -> Result<ResultTable> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("result file: {e}")))
}
