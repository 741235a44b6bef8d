use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Comma-separated table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }

    fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// What a command produced.
pub struct Outcome {
    /// File stem, e.g. `pointer-optimize`.
    pub stem: String,
    pub report: Value,
    /// `(suffix, table)`; suffix empty for the main table.
    pub tables: Vec<(String, Table)>,
    /// A checked inequality or claimed property failed.
    pub violation: bool,
}

#[derive(Debug, Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    flags: &'a [String],
    seed: Option<u64>,
    tol: Option<f64>,
    threads: Option<usize>,
    tool_version: &'static str,
    wall_time_s: f64,
    outputs: Vec<String>,
    violation: bool,
}

pub struct RunContext {
    pub command: String,
    pub flags: Vec<String>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub threads: Option<usize>,
    pub out_dir: PathBuf,
    pub start: Instant,
}

pub fn to_json<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))
}

/// Write report, tables and manifest; returns the report text.
pub fn emit(ctx: &RunContext, out: &Outcome) -> Result<String, CliError> {
    fs::create_dir_all(&ctx.out_dir).map_err(|e| CliError::Io(format!("{}: {e}", ctx.out_dir.display())))?;
    let mut outputs = Vec::new();
    let report_path = ctx.out_dir.join(format!("{}.json", out.stem));
    let mut text = serde_json::to_string_pretty(&out.report).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(&report_path, &text).map_err(|e| CliError::Io(format!("{}: {e}", report_path.display())))?;
    outputs.push(report_path.display().to_string());
    for (suffix, table) in &out.tables {
        let name = if suffix.is_empty() {
            format!("{}.csv", out.stem)
        } else {
            format!("{}-{suffix}.csv", out.stem)
        };
        let p = ctx.out_dir.join(name);
        table.write(&p)?;
        outputs.push(p.display().to_string());
    }
    let manifest_path = ctx.out_dir.join(format!("{}.manifest.json", out.stem));
    outputs.push(manifest_path.display().to_string());
    let m = RunManifest {
        command: &ctx.command,
        flags: &ctx.flags,
        seed: ctx.seed,
        tol: ctx.tol,
        threads: ctx.threads,
        tool_version: env!("CARGO_PKG_VERSION"),
        wall_time_s: ctx.start.elapsed().as_secs_f64(),
        outputs,
        violation: out.violation,
    };
    let mut mt = serde_json::to_string_pretty(&m).map_err(|e| CliError::Io(e.to_string()))?;
    mt.push('\n');
    fs::write(&manifest_path, mt).map_err(|e| CliError::Io(format!("{}: {e}", manifest_path.display())))?;
    Ok(text)
}
