//! Suite configuration, loadable from JSON. Missing fields take defaults.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_3;

use serde::{Deserialize, Serialize};

use hilbert_core::Grid1D;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl LineConfig {
    pub fn grid(&self) -> hilbert_core::Result<Grid1D> {
        Grid1D::over(self.x_min, self.x_max, self.n)
    }

    /// Spacing of the grid, or NaN for a degenerate config.
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleConfig {
    #[serde(rename = "K")]
    pub k_max: usize,
    pub n_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryConfig {
    /// Grid for dense line-basis commutator checks.
    pub line: LineConfig,
    /// Sample count for dense line-basis decomposition and classification.
    pub decomposition_n: usize,
    /// Truncation for circle operator matrices.
    #[serde(rename = "K")]
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub rng_seed: u64,
    pub line: LineConfig,
    pub circle: CircleConfig,
    pub symmetry: SymmetryConfig,
    pub tolerances: BTreeMap<String, f64>,
    pub probe_counts: BTreeMap<String, usize>,
    pub affine_set: Vec<(f64, f64)>,
    pub rational_set: Vec<(u32, u32, f64)>,
    pub moebius_set: Vec<(f64, f64)>,
}

pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("A01", 1e-3),
        ("A02-line", 1e-10),
        ("A02-circle", 1e-14),
        ("A03", 1e-6),
        ("A04", 1e-14),
        ("A05", 1e-12),
        ("A06", 1e-14),
        ("A07-roundtrip", 1e-12),
        ("A08", 1e-14),
        ("A09-certify", 1e-12),
        ("A09-flag", 0.5),
        ("A11-unitary", 1e-8),
        ("C-composition", 1e-15),
        ("C-mean", 1e-15),
        ("C-quadrature", 1e-3),
        ("C-invariance", 1e-15),
        ("L-hardy", 1e-12),
        ("L-homomorphism", 1e-8),
        ("L-intertwine", 1e-8),
        ("L-isometry", 1e-8),
        ("S-circle-commutator", 1e-14),
        ("S-line-commutator", 1e-6),
        ("S-position", 0.1),
        ("S-soundness", 1e-10),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

pub fn default_probe_counts() -> BTreeMap<String, usize> {
    [
        ("line", 20),
        ("circle", 20),
        ("decomposition", 100),
        ("orbit", 10),
        ("families", 10),
        ("moebius", 5),
        ("symmetry", 5),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let line = LineConfig {
            x_min: -40.0,
            x_max: 40.0,
            n: 4096,
        };
        let dx = line.dx();
        let affine_set = [0.5, 2.0, 4.0]
            .iter()
            .flat_map(|&a| [0.0, 7.0 * dx, -7.0 * dx, 3.5 * dx].map(|b| (a, b)))
            .collect();
        let mut rational_set = Vec::new();
        for q in 1..=5u32 {
            for p in 1..=5u32 {
                if gcd(q, p) == 1 {
                    for beta in [0.0, 1.0, FRAC_PI_3] {
                        rational_set.push((q, p, beta));
                    }
                }
            }
        }
        SuiteConfig {
            rng_seed: 1,
            line,
            circle: CircleConfig {
                k_max: 128,
                n_samples: 512,
            },
            symmetry: SymmetryConfig {
                line: LineConfig {
                    x_min: -40.0,
                    x_max: 40.0,
                    n: 1024,
                },
                decomposition_n: 256,
                k_max: 128,
            },
            tolerances: default_tolerances(),
            probe_counts: default_probe_counts(),
            affine_set,
            rational_set,
            moebius_set: vec![(0.0, 0.0), (0.5, 0.3), (1.0, 0.7)],
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn usage(field: &str, reason: impl Into<String>) -> CliError {
    CliError::Usage(format!("config field `{field}`: {}", reason.into()))
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        // partial maps extend the defaults rather than replace them
        for (k, v) in default_tolerances() {
            cfg.tolerances.entry(k).or_insert(v);
        }
        for (k, v) in default_probe_counts() {
            cfg.probe_counts.entry(k).or_insert(v);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Structural checks only; numerical infeasibility (e.g. a grid too
    /// coarse for guarded probes) surfaces as failed records instead.
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, line) in [("line", &self.line), ("symmetry.line", &self.symmetry.line)] {
            if !(line.x_min.is_finite() && line.x_max.is_finite() && line.x_min < line.x_max) {
                return Err(usage(name, "need finite x_min < x_max"));
            }
            if line.n < 2 {
                return Err(usage(&format!("{name}.n"), "need at least 2 samples"));
            }
        }
        if self.symmetry.decomposition_n < 2 {
            return Err(usage("symmetry.decomposition_n", "need at least 2 samples"));
        }
        if !self.circle.n_samples.is_multiple_of(2) || self.circle.n_samples == 0 {
            return Err(usage(
                "circle.n_samples",
                "quadrature needs an even, positive sample count",
            ));
        }
        if self.circle.k_max == 0 || self.symmetry.k_max == 0 {
            return Err(usage("circle.K", "need K >= 1"));
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(usage(&format!("tolerances.{k}"), format!("must be positive, got {v}")));
        }
        if let Some((k, _)) = self.probe_counts.iter().find(|(_, v)| **v == 0) {
            return Err(usage(&format!("probe_counts.{k}"), "must be at least 1"));
        }
        if self.affine_set.is_empty() {
            return Err(usage("affine_set", "must be non-empty"));
        }
        if self.rational_set.is_empty() {
            return Err(usage("rational_set", "must be non-empty"));
        }
        if self.moebius_set.is_empty() {
            return Err(usage("moebius_set", "must be non-empty"));
        }
        Ok(())
    }

    pub fn tolerance(&self, id: &str) -> f64 {
        self.tolerances.get(id).copied().unwrap_or(f64::NAN)
    }

    pub fn count(&self, name: &str) -> usize {
        self.probe_counts.get(name).copied().unwrap_or(1)
    }
}
