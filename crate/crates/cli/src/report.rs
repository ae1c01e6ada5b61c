//! Suite reports: JSON, CSV and two-column gnuplot data.

use serde::Serialize;

use crate::config::SuiteConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Passes iff `measured <= tolerance`.
    AtMost,
    /// Passes iff `measured >= tolerance`.
    AtLeast,
    /// Measured and published only; passes iff the measurement succeeded.
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub anchor: String,
    pub mode: Mode,
    pub measured: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub target: String,
    pub timestamp_unix: u64,
    pub pass: bool,
    pub summary: Summary,
    pub config: SuiteConfig,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(target: &str, config: &SuiteConfig, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let passed = records.iter().filter(|r| r.pass).count();
        let timestamp_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        SuiteReport {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            target: target.to_string(),
            timestamp_unix,
            pass: passed == records.len(),
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            config: config.clone(),
            records,
        }
    }

    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let cell = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        let mut out = String::from("check_id,measured,tolerance,pass\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.check_id,
                cell(r.measured),
                cell(r.tolerance),
                r.pass
            ));
        }
        out
    }

    /// `index measured` rows for every record with a measurement.
    pub fn to_gnuplot_dat(&self) -> String {
        let mut out = String::from("# index measured  (check ids in order:");
        let with_values: Vec<_> = self.records.iter().filter_map(|r| r.measured.map(|m| (r, m))).collect();
        for (r, _) in &with_values {
            out.push(' ');
            out.push_str(&r.check_id);
        }
        out.push_str(")\n");
        for (i, (_, m)) in with_values.iter().enumerate() {
            out.push_str(&format!("{i} {m:e}\n"));
        }
        out
    }

    /// One line per record, for terminals.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let measured = r.measured.map(|m| format!("{m:.3e}")).unwrap_or_else(|| "-".into());
            let tol = match (r.mode, r.tolerance) {
                (Mode::Report, _) => "reported".to_string(),
                (Mode::AtMost, Some(t)) => format!("<= {t:.1e}"),
                (Mode::AtLeast, Some(t)) => format!(">= {t:.1e}"),
                _ => "-".into(),
            };
            out.push_str(&format!(
                "{status} {:<22} {measured:>10} {tol:<10} {}",
                r.check_id, r.anchor
            ));
            if let Some(e) = &r.error {
                out.push_str(&format!("  [{e}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.summary.passed, self.summary.total
        ));
        out
    }
}
