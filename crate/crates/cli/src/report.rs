//! Machine-readable run reports.
//!
//! Every command produces a [`RunReport`]: resolved inputs, scalar results,
//! tabular rows, and warnings. Values are stored as strings formatted once,
//! so the JSON and CSV renderings of identical inputs are byte-identical.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Resolved file paths and parameters.
    pub inputs: BTreeMap<String, String>,
    /// Scalar results.
    pub summary: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            summary: BTreeMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn summarize(&mut self, key: &str, value: impl ToString) {
        self.summary.insert(key.to_string(), value.to_string());
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.columns = names.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, values: Vec<String>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    pub fn warn(&mut self, message: impl ToString) {
        self.warnings.push(message.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Tabular rows as CSV, with summary values as leading `#` comments.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.summary {
            out.push_str(&format!("# {key}: {value}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Everything a command hands back to `main` for rendering.
pub struct CommandOutput {
    pub report: RunReport,
    /// Human-readable lines for plain stdout mode.
    pub summary_lines: Vec<String>,
    /// Payload for `--output`; commands with a dedicated CSV format
    /// (design results) override the default report rendering.
    pub csv: String,
}

impl CommandOutput {
    pub fn from_report(report: RunReport, summary_lines: Vec<String>) -> Self {
        let csv = report.to_csv();
        Self {
            report,
            summary_lines,
            csv,
        }
    }
}

/// Full-precision decimal rendering; round-trips through `str::parse`.
pub fn full(value: f64) -> String {
    format!("{value}")
}

/// Radii and RMSE comparisons print at two decimals.
pub fn mm2(value: f64) -> String {
    format!("{value:.2}")
}

/// Strains print as percentages at two decimals.
pub fn percent(strain: f64) -> String {
    format!("{:.2}%", strain * 100.0)
}

/// Curvatures print at six decimals [1/mm].
pub fn kappa(value: f64) -> String {
    format!("{value:.6}")
}
