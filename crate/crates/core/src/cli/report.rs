//! Verification records, the report document, and its JSON / CSV forms.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::config::RunConfig;
use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;
pub const CSV_HEADER: &str = "t,value,fit_slope,anchor";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Observe,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Observe => "observe",
            Status::NotApplicable => "not-applicable",
        }
    }
}

/// Where a record's expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Exponent, constant or inequality stated by a theorem or lemma.
    Theorem,
    /// Computed by an independent oracle.
    Derived,
    /// Exact by construction.
    Exact,
    /// Consistency of the tooling itself.
    Tooling,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub provenance: Provenance,
    pub status: Status,
    pub measured: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch; the only field that varies between identical runs.
    pub generated_unix: u64,
    pub config: RunConfig,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(config: RunConfig, records: Vec<Record>) -> Self {
        let generated_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            schema: SCHEMA,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            generated_unix,
            config,
            records,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Config(format!("serialising report: {e}")))
    }

    /// One row per series point; records without a series contribute one row
    /// with empty `t`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let slope = |r: &Record| r.fit_slope.map(|s| format!("{s:e}")).unwrap_or_default();
        for r in &self.records {
            let anchor = csv_field(&r.anchor);
            if r.series.is_empty() {
                let value = r
                    .measured
                    .get("value")
                    .and_then(Value::as_f64)
                    .map(|v| format!("{v:e}"))
                    .unwrap_or_default();
                out.push_str(&format!(",{value},{},{anchor}\n", slope(r)));
            } else {
                for (t, v) in &r.series {
                    out.push_str(&format!("{t:e},{v:e},{},{anchor}\n", slope(r)));
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Single writer: appends each record as a JSON line next to the final
/// output while a run is in progress, then writes the finished document.
pub struct ReportWriter {
    partial: Option<(PathBuf, File)>,
}

impl ReportWriter {
    pub fn new(out: Option<&Path>) -> Result<Self> {
        let partial = match out {
            Some(path) => {
                let p = partial_path(path);
                let f = OpenOptions::new()
                    .create(true)
                    .write(true)
                    .truncate(true)
                    .open(&p)
                    .map_err(|e| Error::Config(format!("cannot open {}: {e}", p.display())))?;
                Some((p, f))
            }
            None => None,
        };
        Ok(Self { partial })
    }

    pub fn append(&mut self, record: &Record) -> Result<()> {
        if let Some((p, f)) = self.partial.as_mut() {
            let line = serde_json::to_string(record).map_err(|e| Error::Config(e.to_string()))?;
            writeln!(f, "{line}")
                .map_err(|e| Error::Config(format!("writing {}: {e}", p.display())))?;
        }
        Ok(())
    }

    /// Writes `body` to `out` when given and drops the partial log.
    pub fn finish(self, out: Option<&Path>, body: &str) -> Result<()> {
        if let Some(path) = out {
            fs::write(path, body)
                .map_err(|e| Error::Config(format!("writing {}: {e}", path.display())))?;
        }
        if let Some((p, f)) = self.partial {
            drop(f);
            let _ = fs::remove_file(p);
        }
        Ok(())
    }
}

pub fn partial_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".partial.jsonl");
    out.with_file_name(name)
}
