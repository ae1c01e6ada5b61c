//! JSON signal files:
//!
//! ```text
//! {"type": "line", "grid": {"x_min": .., "n": .., "dx": ..}, "values": [[re, im], ..]}
//! {"type": "circle-coeffs", "grid": {"K": ..}, "values": [..]}      // k = -K..K
//! {"type": "circle-samples", "grid": {"n": ..}, "values": [..]}    // theta_j = 2 pi j / n
//! ```
//!
//! Reals are written with 17 significant digits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::Value;

use super::{CircleSamples, CircleSignal, Grid1D, LineSignal};
use crate::error::{Error, Result};

/// A real formatted with 17 significant digits, emitted verbatim into JSON.
pub(crate) fn num17(x: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{x:.16e}")).expect("formatted float is valid JSON")
}

pub(crate) fn complex17(z: Complex64) -> [Box<RawValue>; 2] {
    [num17(z.re), num17(z.im)]
}

pub(crate) fn parse_complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

/// Any of the three on-disk signal representations.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalFile {
    Line(LineSignal),
    CircleCoeffs(CircleSignal),
    CircleSamples(CircleSamples),
}

#[derive(Serialize)]
struct FileOut<'a> {
    #[serde(rename = "type")]
    kind: &'a str,
    grid: Box<RawValue>,
    values: Vec<[Box<RawValue>; 2]>,
}

#[derive(Deserialize)]
struct FileIn {
    #[serde(rename = "type")]
    kind: String,
    grid: Value,
    values: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct LineGridJson {
    x_min: f64,
    n: usize,
    dx: f64,
}

impl SignalFile {
    pub fn kind(&self) -> &'static str {
        match self {
            SignalFile::Line(_) => "line",
            SignalFile::CircleCoeffs(_) => "circle-coeffs",
            SignalFile::CircleSamples(_) => "circle-samples",
        }
    }

    pub fn to_json(&self) -> String {
        let (grid, values): (String, &[Complex64]) = match self {
            SignalFile::Line(f) => {
                let g = f.grid();
                (
                    format!(
                        "{{\"x_min\":{},\"n\":{},\"dx\":{}}}",
                        num17(g.x_min()).get(),
                        g.n(),
                        num17(g.dx()).get()
                    ),
                    f.values(),
                )
            }
            SignalFile::CircleCoeffs(c) => (format!("{{\"K\":{}}}", c.k_max()), c.coeffs()),
            SignalFile::CircleSamples(s) => (format!("{{\"n\":{}}}", s.n()), s.values()),
        };
        let body = FileOut {
            kind: self.kind(),
            grid: RawValue::from_string(grid).expect("valid grid JSON"),
            values: values.iter().map(|&z| complex17(z)).collect(),
        };
        serde_json::to_string(&body).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FileIn = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let values = parse_complex(&file.values);
        let field = |name: &str| -> Result<&Value> {
            file.grid
                .get(name)
                .ok_or_else(|| Error::Format(format!("grid is missing `{name}`")))
        };
        let as_usize = |v: &Value, name: &str| -> Result<usize> {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Format(format!("`{name}` must be a non-negative integer")))
        };
        match file.kind.as_str() {
            "line" => {
                let g: LineGridJson =
                    serde_json::from_value(file.grid.clone()).map_err(|e| Error::Format(e.to_string()))?;
                let grid = Grid1D::new(g.x_min, g.n, g.dx)?;
                Ok(SignalFile::Line(LineSignal::new(grid, values)?))
            }
            "circle-coeffs" => {
                let k = as_usize(field("K")?, "K")?;
                Ok(SignalFile::CircleCoeffs(CircleSignal::new(k, values)?))
            }
            "circle-samples" => {
                let n = as_usize(field("n")?, "n")?;
                if n != values.len() {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: values.len(),
                    });
                }
                Ok(SignalFile::CircleSamples(CircleSamples::new(values)?))
            }
            other => Err(Error::Format(format!("unknown signal type `{other}`"))),
        }
    }
}
