//! The verification suites behind `verify`.

mod circle;
mod line;
mod symmetry;

use std::str::FromStr;

use crate::config::SuiteConfig;
use crate::report::{CheckRecord, Mode, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Line,
    Circle,
    Symmetry,
    All,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Line => "line",
            Target::Circle => "circle",
            Target::Symmetry => "symmetry",
            Target::All => "all",
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "line" => Ok(Target::Line),
            "circle" => Ok(Target::Circle),
            "symmetry" => Ok(Target::Symmetry),
            "all" => Ok(Target::All),
            other => Err(format!(
                "unknown target `{other}` (expected line, circle, symmetry or all)"
            )),
        }
    }
}

/// A measurement with optional context for the report.
pub(crate) struct Measured {
    pub value: f64,
    pub detail: Option<String>,
}

impl Measured {
    pub fn new(value: f64) -> Self {
        Measured { value, detail: None }
    }

    pub fn with(value: f64, detail: impl Into<String>) -> Self {
        Measured {
            value,
            detail: Some(detail.into()),
        }
    }
}

pub(crate) type Outcome = Result<Measured, hilbert_core::Error>;

/// Check metadata; the tolerance is looked up by id unless fixed.
pub(crate) struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub mode: Mode,
    pub fixed_tolerance: Option<f64>,
}

impl Check {
    pub const fn at_most(id: &'static str, anchor: &'static str) -> Self {
        Check {
            id,
            anchor,
            mode: Mode::AtMost,
            fixed_tolerance: None,
        }
    }

    /// Exact count of failures; passes only at zero.
    pub const fn count(id: &'static str, anchor: &'static str) -> Self {
        Check {
            id,
            anchor,
            mode: Mode::AtMost,
            fixed_tolerance: Some(0.0),
        }
    }

    pub const fn at_least(id: &'static str, anchor: &'static str) -> Self {
        Check {
            id,
            anchor,
            mode: Mode::AtLeast,
            fixed_tolerance: None,
        }
    }

    pub const fn report(id: &'static str, anchor: &'static str) -> Self {
        Check {
            id,
            anchor,
            mode: Mode::Report,
            fixed_tolerance: None,
        }
    }

    pub fn record(&self, cfg: &SuiteConfig, outcome: Outcome) -> CheckRecord {
        let tolerance = match self.mode {
            Mode::Report => None,
            _ => Some(self.fixed_tolerance.unwrap_or_else(|| cfg.tolerance(self.id))),
        };
        let (measured, detail, error) = match outcome {
            Ok(m) => (Some(m.value), m.detail, None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        let pass = match (self.mode, measured, tolerance) {
            (_, None, _) => false,
            (Mode::Report, Some(m), _) => m.is_finite(),
            (Mode::AtMost, Some(m), Some(t)) => m <= t,
            (Mode::AtLeast, Some(m), Some(t)) => m >= t,
            _ => false,
        };
        CheckRecord {
            check_id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            mode: self.mode,
            measured,
            tolerance,
            pass,
            detail,
            error,
        }
    }
}

/// Runs every check of `target`. Failures of any kind become failed records.
pub fn run_verify(target: Target, cfg: &SuiteConfig) -> SuiteReport {
    let mut records = Vec::new();
    if matches!(target, Target::Line | Target::All) {
        records.extend(line::run(cfg));
    }
    if matches!(target, Target::Circle | Target::All) {
        records.extend(circle::run(cfg));
    }
    if matches!(target, Target::Symmetry | Target::All) {
        records.extend(symmetry::run(cfg));
    }
    SuiteReport::new(target.name(), cfg, records)
}

/// Largest value of a fallible sequence; errors short-circuit.
pub(crate) fn max_of<I>(iter: I) -> Result<f64, hilbert_core::Error>
where
    I: IntoIterator<Item = Result<f64, hilbert_core::Error>>,
{
    iter.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

/// Independent stream seeds per check.
pub(crate) fn seed(cfg: &SuiteConfig, salt: u64) -> u64 {
    cfg.rng_seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt)
}
