//! Dense operator matrices on a declared truncated basis.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::value::RawValue;

use crate::circle::{cauchy_pv, cauchy_symbol, circular_hilbert_symbol};
use crate::error::{Error, Result};
use crate::line::{hardy_symbol, hilbert_symbol, HardySign};
use crate::signal::format::{complex17, num17, parse_complex};
use crate::signal::fourier::fft_inverse;
use crate::signal::{CircleSignal, Grid1D, LineSignal, ZERO};

/// The coordinates an [`OperatorMatrix`] acts on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    /// Fourier modes `k = -K..=K`, index `k + K`.
    Fourier { k_max: usize },
    /// Sample values on a line grid.
    Line { grid: Grid1D },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Fourier { k_max } => 2 * k_max + 1,
            Basis::Line { grid } => grid.n(),
        }
    }

    /// Signed frequency carried by basis index `i` after transforming to
    /// the Fourier side.
    pub fn frequency_index(&self, i: usize) -> i64 {
        match self {
            Basis::Fourier { k_max } => i as i64 - *k_max as i64,
            Basis::Line { grid } => grid.signed_index(i),
        }
    }

    /// Whether index `i` is the Nyquist bin of an even line grid.
    pub fn is_nyquist(&self, i: usize) -> bool {
        match self {
            Basis::Fourier { .. } => false,
            Basis::Line { grid } => grid.nyquist_bin() == Some(i),
        }
    }

    fn describe(&self) -> String {
        match self {
            Basis::Fourier { k_max } => format!("fourier basis with K={k_max}"),
            Basis::Line { grid } => format!("line basis with n={}", grid.n()),
        }
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: Basis,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn new(basis: Basis, entries: Vec<Complex64>) -> Result<Self> {
        let dim = basis.dim();
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(index) = entries.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(OperatorMatrix { basis, entries })
    }

    pub fn from_fn(basis: Basis, f: impl Fn(usize, usize) -> Complex64 + Sync) -> Self {
        let dim = basis.dim();
        let entries = (0..dim * dim).into_par_iter().map(|e| f(e / dim, e % dim)).collect();
        OperatorMatrix { basis, entries }
    }

    pub fn zeros(basis: Basis) -> Self {
        let dim = basis.dim();
        OperatorMatrix {
            basis,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(basis: Basis) -> Self {
        Self::diagonal(basis, |_| Complex64::new(1.0, 0.0))
    }

    pub fn diagonal(basis: Basis, d: impl Fn(usize) -> Complex64) -> Self {
        let mut m = Self::zeros(basis);
        let dim = basis.dim();
        for i in 0..dim {
            m.entries[i * dim + i] = d(i);
        }
        m
    }

    /// Columns are the images of the unit vectors under `op`.
    pub fn from_linear_map(basis: Basis, op: impl Fn(&[Complex64]) -> Vec<Complex64> + Sync) -> Result<Self> {
        let dim = basis.dim();
        let columns: Vec<Vec<Complex64>> = (0..dim)
            .into_par_iter()
            .map(|j| {
                let mut e = vec![ZERO; dim];
                e[j] = Complex64::new(1.0, 0.0);
                op(&e)
            })
            .collect();
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(basis, |i, j| columns[j][i]))
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim() + j]
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        OperatorMatrix {
            basis: self.basis,
            entries: self.entries.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip(&self, other: &OperatorMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_basis(&other.basis)?;
        Ok(OperatorMatrix {
            basis: self.basis,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn adjoint(&self) -> Self {
        let dim = self.dim();
        Self::from_fn(self.basis, |i, j| self.entries[j * dim + i].conj())
    }

    pub fn matmul(&self, other: &OperatorMatrix) -> Result<Self> {
        self.check_basis(&other.basis)?;
        let dim = self.dim();
        let mut out = vec![ZERO; dim * dim];
        out.par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
            for l in 0..dim {
                let a = self.entries[i * dim + l];
                if a == ZERO {
                    continue;
                }
                for (slot, b) in row.iter_mut().zip(&other.entries[l * dim..(l + 1) * dim]) {
                    *slot += a * b;
                }
            }
        });
        Ok(OperatorMatrix {
            basis: self.basis,
            entries: out,
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if v.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(self
            .entries
            .par_chunks(dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn apply_line(&self, f: &LineSignal) -> Result<LineSignal> {
        match self.basis {
            Basis::Line { grid } if grid == *f.grid() => LineSignal::new(grid, self.apply(f.values())?),
            _ => Err(Error::BasisMismatch(format!(
                "operator on {} cannot act on a line signal with n={}",
                self.basis.describe(),
                f.grid().n()
            ))),
        }
    }

    pub fn apply_circle(&self, c: &CircleSignal) -> Result<CircleSignal> {
        match self.basis {
            Basis::Fourier { k_max } if k_max == c.k_max() => CircleSignal::new(k_max, self.apply(c.coeffs())?),
            _ => Err(Error::BasisMismatch(format!(
                "operator on {} cannot act on a circle signal with K={}",
                self.basis.describe(),
                c.k_max()
            ))),
        }
    }

    pub(crate) fn check_basis(&self, basis: &Basis) -> Result<()> {
        if self.basis != *basis {
            return Err(Error::BasisMismatch(format!(
                "{} vs {}",
                self.basis.describe(),
                basis.describe()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let basis = match self.basis {
            Basis::Fourier { k_max } => format!("{{\"kind\":\"fourier\",\"K\":{k_max}}}"),
            Basis::Line { grid } => format!(
                "{{\"kind\":\"line\",\"n\":{},\"x_min\":{},\"dx\":{}}}",
                grid.n(),
                num17(grid.x_min()).get(),
                num17(grid.dx()).get()
            ),
        };
        #[derive(serde::Serialize)]
        struct Out {
            dim: usize,
            basis: Box<RawValue>,
            entries: Vec<[Box<RawValue>; 2]>,
        }
        let out = Out {
            dim: self.dim(),
            basis: RawValue::from_string(basis).expect("valid basis JSON"),
            entries: self.entries.iter().map(|&z| complex17(z)).collect(),
        };
        serde_json::to_string(&out).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(tag = "kind", rename_all = "lowercase")]
        enum BasisIn {
            Fourier {
                #[serde(rename = "K")]
                k: usize,
            },
            Line {
                n: usize,
                x_min: f64,
                dx: f64,
            },
        }
        #[derive(Deserialize)]
        struct In {
            dim: usize,
            basis: BasisIn,
            entries: Vec<[f64; 2]>,
        }
        let file: In = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let basis = match file.basis {
            BasisIn::Fourier { k } => Basis::Fourier { k_max: k },
            BasisIn::Line { n, x_min, dx } => Basis::Line {
                grid: Grid1D::new(x_min, n, dx)?,
            },
        };
        if basis.dim() != file.dim {
            return Err(Error::BasisMismatch(format!(
                "declared dim {} but {} has dimension {}",
                file.dim,
                basis.describe(),
                basis.dim()
            )));
        }
        Self::new(basis, parse_complex(&file.entries))
    }
}

/// Translation-invariant operator on a line grid with Fourier symbol `m(k)`.
pub fn circulant_from_symbol(grid: Grid1D, m: impl Fn(i64) -> Complex64) -> OperatorMatrix {
    let n = grid.n();
    let mut col: Vec<Complex64> = (0..n).map(|b| m(grid.signed_index(b))).collect();
    fft_inverse(&mut col);
    let scale = 1.0 / n as f64;
    OperatorMatrix::from_fn(Basis::Line { grid }, |i, j| col[(i + n - j) % n] * scale)
}

/// The discrete Hilbert transform on a line grid or on Fourier modes.
pub fn hilbert_matrix(basis: Basis) -> OperatorMatrix {
    match basis {
        Basis::Line { grid } => circulant_from_symbol(grid, |k| hilbert_symbol(k, grid.n())),
        Basis::Fourier { k_max } => {
            OperatorMatrix::diagonal(basis, |i| circular_hilbert_symbol(i as i64 - k_max as i64))
        }
    }
}

/// `P+` with the DC (and Nyquist) share split evenly.
pub fn hardy_plus_matrix(basis: Basis) -> OperatorMatrix {
    match basis {
        Basis::Line { grid } => circulant_from_symbol(grid, |k| {
            Complex64::new(hardy_symbol(k, grid.n(), HardySign::Plus), 0.0)
        }),
        Basis::Fourier { k_max } => OperatorMatrix::diagonal(basis, |i| {
            Complex64::new(
                hardy_symbol(i as i64 - k_max as i64, 2 * k_max + 1, HardySign::Plus),
                0.0,
            )
        }),
    }
}

/// Multiplication by the sample position `x_j`.
pub fn position_matrix(grid: Grid1D) -> OperatorMatrix {
    OperatorMatrix::diagonal(Basis::Line { grid }, |j| Complex64::new(grid.x(j), 0.0))
}

pub fn cauchy_pv_matrix(k_max: usize) -> OperatorMatrix {
    circle_diagonal(k_max, cauchy_pv)
}

pub fn cauchy_symbol_matrix(k_max: usize) -> OperatorMatrix {
    circle_diagonal(k_max, cauchy_symbol)
}

fn circle_diagonal(k_max: usize, op: impl Fn(&CircleSignal) -> CircleSignal) -> OperatorMatrix {
    let ones = CircleSignal::from_fn(k_max, |_| Complex64::new(1.0, 0.0)).expect("valid degree");
    let symbol = op(&ones);
    OperatorMatrix::diagonal(Basis::Fourier { k_max }, |i| symbol.coeffs()[i])
}
