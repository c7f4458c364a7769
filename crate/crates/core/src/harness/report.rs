//! Change-rate tables (one per metric) and JSON dumps of an experiment.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::run::{ExperimentOutput, Metric};
use crate::error::{Error, Result};
use crate::evaluation::mean_defined;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
    Markdown,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 3] = [ReportFormat::Csv, ReportFormat::Json, ReportFormat::Markdown];
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::Usage(format!("unknown report format `{other}`"))),
        }
    }
}

pub const UNDEFINED: &str = "n/a";

/// Rows are targets, columns are learner x filter in config order. The
/// last row holds the mean of the defined cells of each column.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeTable {
    pub metric: Metric,
    /// `(machine name, display name)` per column.
    pub columns: Vec<(String, String)>,
    pub rows: Vec<(String, Vec<Option<f64>>)>,
    pub average: Vec<Option<f64>>,
}

pub fn change_table(output: &ExperimentOutput, metric: Metric) -> ChangeTable {
    let cfg = &output.config;
    let mut columns = Vec::new();
    for l in &cfg.learners {
        for f in &cfg.filters {
            columns.push((
                format!("{}/{}", l.name(), f.name()),
                format!("{} {}", l.display_name(), f.display_name()),
            ));
        }
    }
    let rows: Vec<(String, Vec<Option<f64>>)> = output
        .targets
        .iter()
        .map(|t| {
            let mut cells = Vec::with_capacity(columns.len());
            for &l in &cfg.learners {
                for &f in &cfg.filters {
                    let r = output
                        .results
                        .iter()
                        .find(|r| &r.target == t && r.learner == l && r.filter == f && r.metric == metric);
                    cells.push(r.and_then(|r| r.rate_percent()));
                }
            }
            (t.clone(), cells)
        })
        .collect();
    let average = (0..columns.len())
        .map(|j| mean_defined(rows.iter().map(|r| r.1[j])))
        .collect();
    ChangeTable {
        metric,
        columns,
        rows: if cfg.filters.is_empty() || cfg.learners.is_empty() {
            Vec::new()
        } else {
            rows
        },
        average,
    }
}

impl ChangeTable {
    /// Full-precision values; parsing a cell gives back the exact `f64`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["target".to_string()];
        header.extend(self.columns.iter().map(|c| c.0.clone()));
        w.write_record(&header)?;
        let cell = |v: &Option<f64>| v.map_or(UNDEFINED.to_string(), |x| format!("{x}"));
        for (target, cells) in &self.rows {
            let mut rec = vec![target.clone()];
            rec.extend(cells.iter().map(cell));
            w.write_record(&rec)?;
        }
        if !self.rows.is_empty() {
            let mut rec = vec!["AVG".to_string()];
            rec.extend(self.average.iter().map(cell));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invariant(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## {} change (%), cleaned vs original\n", self.metric.display_name());
        let _ = write!(s, "| Target |");
        for c in &self.columns {
            let _ = write!(s, " {} |", c.1);
        }
        let _ = write!(s, "\n|---|");
        for _ in &self.columns {
            let _ = write!(s, "---:|");
        }
        s.push('\n');
        let cell = |v: &Option<f64>| v.map_or(UNDEFINED.to_string(), |x| format!("{x:.2}"));
        for (target, cells) in &self.rows {
            let _ = write!(s, "| {target} |");
            for c in cells {
                let _ = write!(s, " {} |", cell(c));
            }
            s.push('\n');
        }
        if !self.rows.is_empty() {
            let _ = write!(s, "| AVG |");
            for c in &self.average {
                let _ = write!(s, " {} |", cell(c));
            }
            s.push('\n');
        }
        s
    }
}

fn file_stem(metric: Metric) -> &'static str {
    match metric {
        Metric::FMeasure => "fmeasure_change",
        Metric::Auc => "auc_change",
    }
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Write the requested formats into `dir`, creating it if needed. JSON
/// output is `results.json` plus `timings.json`; only the latter varies
/// between identical runs.
pub fn emit_reports(output: &ExperimentOutput, dir: &Path, formats: &[ReportFormat]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for metric in Metric::ALL {
        let table = change_table(output, metric);
        if formats.contains(&ReportFormat::Csv) {
            let path = dir.join(format!("{}.csv", file_stem(metric)));
            write(path, &table.to_csv()?, &mut written)?;
        }
        if formats.contains(&ReportFormat::Markdown) {
            let path = dir.join(format!("{}.md", file_stem(metric)));
            write(path, &table.to_markdown(), &mut written)?;
        }
    }
    if formats.contains(&ReportFormat::Json) {
        let mut json = serde_json::to_string_pretty(output)?;
        json.push('\n');
        write(dir.join("results.json"), &json, &mut written)?;
        let mut timings = serde_json::to_string_pretty(&output.timings)?;
        timings.push('\n');
        write(dir.join("timings.json"), &timings, &mut written)?;
    }
    Ok(written)
}
