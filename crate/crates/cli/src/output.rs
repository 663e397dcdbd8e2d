//! Deterministic CSV output: `#`-prefixed header comments echoing the full
//! run configuration, fixed 12-significant-digit formatting.

use std::io::Write;
use std::path::PathBuf;

use crate::CliError;

/// 12 significant digits, scientific; identical configs produce
/// byte-identical files.
pub fn fmt(x: f64) -> String {
    format!("{x:.11e}")
}

pub struct CsvWriter {
    header: Vec<String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl CsvWriter {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        CsvWriter {
            header: vec![format!("# partialwave {command}")],
            columns,
            rows: Vec::new(),
        }
    }

    /// One `key=value` pair of the config echo.
    pub fn echo(&mut self, key: &str, value: impl std::fmt::Display) {
        self.header.push(format!("# {key}={value}"));
    }

    pub fn comment(&mut self, text: &str) {
        self.header.push(format!("# {text}"));
    }

    pub fn row(&mut self, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    pub fn write(&self, out: &Option<PathBuf>) -> Result<(), CliError> {
        let mut text = String::new();
        for line in &self.header {
            text.push_str(line);
            text.push('\n');
        }
        text.push_str("# columns: ");
        text.push_str(&self.columns.join(","));
        text.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|&x| fmt(x)).collect();
            text.push_str(&fields.join(","));
            text.push('\n');
        }
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Sidecar path `foo.peaks.csv` next to `foo.csv`.
pub fn sidecar_path(out: &PathBuf) -> PathBuf {
    let mut p = out.clone();
    let stem = p
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    p.set_file_name(format!("{stem}.peaks.csv"));
    p
}
