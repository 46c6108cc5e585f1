//! Report files: report.json (stable key order — struct fields serialize in
//! declaration order, JSON maps sort their keys) plus optional CSV curves.
//! Everything except the timestamp is a pure function of the config, so
//! re-running an experiment reproduces the report byte for byte modulo that
//! one field.

use crate::config::ExperimentConfig;
use crate::error::Result;
use serde::Serialize;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    /// Unix seconds at completion; the only field exempt from determinism.
    pub timestamp: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Experiment-specific payload (verdicts, curves, truncation masses).
    pub data: serde_json::Value,
    /// The full effective configuration, flag overrides applied.
    pub config: ExperimentConfig,
}

impl Report {
    pub fn new(experiment: &str, checks: Vec<Check>, data: serde_json::Value, config: &ExperimentConfig) -> Report {
        Report {
            experiment: experiment.into(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            passed: checks.iter().all(|c| c.passed),
            checks,
            data,
            config: config.clone(),
        }
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut json = serde_json::to_string_pretty(self).expect("report serializes");
        json.push('\n');
        std::fs::write(dir.join("report.json"), json)?;
        Ok(())
    }
}

/// RFC-4180-style CSV: CRLF rows, fields quoted only when needed.
pub fn write_csv(dir: &Path, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let quote = |f: &str| -> String {
        if f.contains([',', '"', '\n', '\r']) {
            format!("\"{}\"", f.replace('"', "\"\""))
        } else {
            f.to_string()
        }
    };
    let mut out = String::new();
    out.push_str(&header.iter().map(|h| quote(h)).collect::<Vec<_>>().join(","));
    out.push_str("\r\n");
    for row in rows {
        out.push_str(&row.iter().map(|f| quote(f)).collect::<Vec<_>>().join(","));
        out.push_str("\r\n");
    }
    std::fs::write(dir.join(name), out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passed_is_conjunction() {
        let cfg = ExperimentConfig::default();
        let ok = Report::new("x", vec![Check::new("a", true, "")], serde_json::json!({}), &cfg);
        assert!(ok.passed);
        let bad = Report::new(
            "x",
            vec![Check::new("a", true, ""), Check::new("b", false, "")],
            serde_json::json!({}),
            &cfg,
        );
        assert!(!bad.passed);
    }

    #[test]
    fn csv_quoting() {
        let dir = tempfile::tempdir().unwrap();
        write_csv(
            dir.path(),
            "t.csv",
            &["a", "b"],
            &[vec!["1,5".into(), "say \"hi\"".into()]],
        )
        .unwrap();
        let text = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
        assert_eq!(text, "a,b\r\n\"1,5\",\"say \"\"hi\"\"\"\r\n");
    }

    #[test]
    fn report_json_written_with_stable_fields() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig::default();
        let r = Report::new(
            "demo",
            vec![Check::new("c", true, "fine")],
            serde_json::json!({"z": 1, "a": 2}),
            &cfg,
        );
        r.write(dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
        // Map keys come out sorted; struct fields in declaration order.
        assert!(text.find("\"experiment\"").unwrap() < text.find("\"checks\"").unwrap());
        assert!(text.find("\"a\": 2").unwrap() < text.find("\"z\": 1").unwrap());
    }
}
