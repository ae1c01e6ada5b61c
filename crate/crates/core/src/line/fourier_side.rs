//! The affine action on the frequency side, restricted to a half-line.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::AffineElement;
use crate::error::{invalid, Result};
use crate::signal::{InnerProductSpace, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLine {
    Positive,
    Negative,
}

impl HalfLine {
    fn sign(self) -> f64 {
        match self {
            HalfLine::Positive => 1.0,
            HalfLine::Negative => -1.0,
        }
    }
}

/// Phase attached to the translation part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseConvention {
    /// `e^{i b x}`, matching the transform `int f(x) e^{-i x xi} dx`.
    #[default]
    Angular,
    /// `e^{2 pi i b x}`.
    Cyclic,
}

/// Samples of a function on one open half-line at `x_j = +-(j + 1) h`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineSignal {
    side: HalfLine,
    h: f64,
    samples: Vec<Complex64>,
}

impl HalfLineSignal {
    pub fn new(side: HalfLine, h: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(invalid("h", format!("spacing must be positive, got {h}")));
        }
        if samples.is_empty() {
            return Err(invalid("samples", "at least one sample is required"));
        }
        if let Some(index) = samples.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(crate::error::Error::NonFinite { index });
        }
        Ok(HalfLineSignal { side, h, samples })
    }

    pub fn from_fn(side: HalfLine, h: f64, m: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = (0..m).map(|j| f(side.sign() * (j + 1) as f64 * h)).collect();
        Self::new(side, h, samples)
    }

    pub fn side(&self) -> HalfLine {
        self.side
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn position(&self, j: usize) -> f64 {
        self.side.sign() * (j + 1) as f64 * self.h
    }

    /// Value at `x`: exact on nodes, cubic Lagrange between them, zero off
    /// the sampled range or on the other half-line.
    pub fn value_at(&self, x: f64) -> Complex64 {
        let m = self.samples.len();
        let t = self.side.sign() * x / self.h - 1.0;
        if t.is_nan() || t < -1.0 || t > (m - 1) as f64 + 1e-9 {
            return ZERO;
        }
        let nearest = t.round();
        if (t - nearest).abs() <= 1e-9 * (1.0 + t.abs()) && nearest >= 0.0 {
            return self.samples[nearest as usize];
        }
        let width = m.min(4);
        let start = ((t.floor() as i64) - 1).clamp(0, (m - width) as i64) as usize;
        let nodes = start..start + width;
        nodes
            .clone()
            .map(|i| {
                let w: f64 = nodes
                    .clone()
                    .filter(|&l| l != i)
                    .map(|l| (t - l as f64) / (i as f64 - l as f64))
                    .product();
                self.samples[i] * w
            })
            .sum()
    }
}

impl InnerProductSpace for HalfLineSignal {
    fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.side != other.side || self.h != other.h || self.samples.len() != other.samples.len() {
            return Err(crate::error::Error::DomainMismatch(
                "half-line signals differ in layout".into(),
            ));
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * self.h)
    }

    fn norm(&self) -> f64 {
        (self.h * self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// `(pi(g) g)(x) = a^{1/2} e^{i b x} g(a x)` on the same half-line.
pub fn rep_fourier_side(g: &HalfLineSignal, elem: &AffineElement, convention: PhaseConvention) -> HalfLineSignal {
    let (a, b) = (elem.a(), elem.b());
    let freq = match convention {
        PhaseConvention::Angular => b,
        PhaseConvention::Cyclic => 2.0 * PI * b,
    };
    let samples = (0..g.samples.len())
        .map(|j| {
            let x = g.position(j);
            g.value_at(a * x) * Complex64::from_polar(a.sqrt(), freq * x)
        })
        .collect();
    HalfLineSignal {
        side: g.side,
        h: g.h,
        samples,
    }
}
