//! Machine-readable report documents.
//!
//! Exact rationals are serialized as decimal num/den strings (floats appear
//! only as convenience duplicates), the config echo is an ordered map, and
//! files are written atomically (temp file + rename), so a rerun with the
//! same flags and seed is byte-identical once the timestamp is suppressed.

use crate::CliError;
use serde::{Deserialize, Serialize};
use sparsecode::report::{rat_serde, VerificationReport, VerificationRow};
use sparsecode::Rat;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McBlock {
    pub name: String,
    #[serde(with = "rat_serde")]
    pub estimate: Rat,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<u64>,
    pub config: BTreeMap<String, String>,
    pub rows: Vec<VerificationRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub monte_carlo: Vec<McBlock>,
}

impl ReportDocument {
    pub fn new(config: BTreeMap<String, String>, with_timestamp: bool) -> Self {
        let timestamp = with_timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            config,
            rows: Vec::new(),
            monte_carlo: Vec::new(),
        }
    }

    pub fn extend(&mut self, report: VerificationReport) {
        self.rows.extend(report.rows);
    }

    pub fn push(&mut self, row: VerificationRow) {
        self.rows.push(row);
    }

    pub fn all_hard_pass(&self) -> bool {
        VerificationReport { rows: self.rows.clone() }.all_hard_pass()
    }

    pub fn failed_hard_names(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| matches!(r.kind, sparsecode::RowKind::Hard) && !r.pass)
            .map(|r| r.name.clone())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// CSV flattening of the rows:
    /// checkName,lhs_num,lhs_den,rhs_num,rhs_den,pass,note
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["checkName", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "pass", "note"])
            .map_err(|e| CliError::Failure(format!("csv: {e}")))?;
        for row in &self.rows {
            w.write_record([
                row.name.as_str(),
                &row.lhs.numer().to_string(),
                &row.lhs.denom().to_string(),
                &row.rhs.numer().to_string(),
                &row.rhs.denom().to_string(),
                if row.pass { "true" } else { "false" },
                row.note.as_str(),
            ])
            .map_err(|e| CliError::Failure(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Failure(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Failure(format!("csv: {e}")))
    }
}

/// Atomic write: same-directory temp file, then rename over the target.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|f| f.to_str()).unwrap_or("out")
        )),
        None => Path::new(&format!(
            ".{}.tmp",
            path.file_name().and_then(|f| f.to_str()).unwrap_or("out")
        ))
        .to_path_buf(),
    };
    let mut f = std::fs::File::create(&tmp).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    f.write_all(contents.as_bytes())
        .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    f.sync_all().ok();
    drop(f);
    std::fs::rename(&tmp, path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    Ok(())
}
