//! Grids, sampled signals, Fourier-coefficient vectors and the unitary
//! Fourier transform shared by the line and circle operators.

pub mod format;
pub mod fourier;
pub mod probes;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use fourier::{fft_forward, fft_inverse};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_finite(values: &[Complex64]) -> Result<()> {
    match values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// Inner-product structure shared by every signal representation.
pub trait InnerProductSpace {
    /// `<self, other>`, conjugate-linear in `other`.
    fn inner(&self, other: &Self) -> Result<Complex64>;

    fn norm(&self) -> f64;
}

/// `<f, g>` for any pair of signals on the same domain.
pub fn inner_product<S: InnerProductSpace>(f: &S, g: &S) -> Result<Complex64> {
    f.inner(g)
}

/// Uniform sampling lattice `x_j = x_min + j dx`, `j in [0, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    n: usize,
    dx: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, n: usize, dx: f64) -> Result<Self> {
        if n < 2 {
            return Err(invalid("n", format!("need at least 2 samples, got {n}")));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(invalid("dx", format!("spacing must be positive, got {dx}")));
        }
        if !x_min.is_finite() {
            return Err(invalid("x_min", "must be finite"));
        }
        Ok(Grid1D { x_min, n, dx })
    }

    /// Periodic grid covering `[x_min, x_max)` with `n` samples.
    pub fn over(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        // also rejects NaN
        if x_max.partial_cmp(&x_min) != Some(std::cmp::Ordering::Greater) {
            return Err(invalid("x_max", "must exceed x_min"));
        }
        Grid1D::new(x_min, n, (x_max - x_min) / n.max(1) as f64)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Length of the periodic cell, `n dx`.
    pub fn length(&self) -> f64 {
        self.n as f64 * self.dx
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.x(j))
    }

    /// Frequency spacing `2 pi / (n dx)`.
    pub fn dxi(&self) -> f64 {
        2.0 * PI / self.length()
    }

    /// Signed frequency index of storage bin `bin` (wrap-around order).
    /// The Nyquist bin of an even grid carries `+n/2`.
    pub fn signed_index(&self, bin: usize) -> i64 {
        let n = self.n as i64;
        let b = bin as i64;
        if b <= n / 2 {
            b
        } else {
            b - n
        }
    }

    /// Storage bin of signed frequency index `k`, if it is on the grid.
    pub fn bin_of(&self, k: i64) -> Option<usize> {
        let n = self.n as i64;
        let lo = -((self.n as i64 + 1) / 2) + 1;
        let hi = n / 2;
        (lo..=hi).contains(&k).then(|| k.rem_euclid(n) as usize)
    }

    /// Inclusive signed index range `[-ceil(n/2)+1, floor(n/2)]`.
    pub fn index_range(&self) -> (i64, i64) {
        (-((self.n as i64 + 1) / 2) + 1, self.n as i64 / 2)
    }

    /// `xi_k = 2 pi k / (n dx)` for storage bin `bin`.
    pub fn frequency(&self, bin: usize) -> f64 {
        self.signed_index(bin) as f64 * self.dxi()
    }

    /// Largest representable frequency magnitude, `pi / dx`.
    pub fn nyquist(&self) -> f64 {
        PI / self.dx
    }

    /// Storage bin of the Nyquist frequency (even `n` only).
    pub fn nyquist_bin(&self) -> Option<usize> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }
}

/// Complex samples of a function on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSignal {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl LineSignal {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::LengthMismatch {
                expected: grid.n,
                found: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(LineSignal { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        LineSignal {
            grid,
            values: vec![ZERO; grid.n],
        }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        LineSignal::new(grid, grid.positions().map(f).collect())
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub(crate) fn with_values(&self, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), self.grid.n);
        LineSignal {
            grid: self.grid,
            values,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.with_values(self.values.iter().map(|v| v * s).collect())
    }

    pub fn add(&self, other: &LineSignal) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &LineSignal) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect()))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part relative to the largest magnitude.
    pub fn imaginary_fraction(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max) / scale
    }

    /// `L^2` norm restricted to the central half `[n/4, 3n/4)` of the grid.
    pub fn central_half_norm(&self) -> f64 {
        let n = self.grid.n;
        let s: f64 = self.values[n / 4..(3 * n) / 4].iter().map(|v| v.norm_sqr()).sum();
        (self.grid.dx * s).sqrt()
    }

    pub(crate) fn check_same_grid(&self, other: &LineSignal) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::DomainMismatch(format!(
                "line grids differ: {:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }
}

impl InnerProductSpace for LineSignal {
    fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.grid.dx)
    }

    fn norm(&self) -> f64 {
        (self.grid.dx * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// Spectrum of a [`LineSignal`], stored in wrap-around bin order.
///
/// Values approximate the continuous unitary transform
/// `f^(xi) = (2 pi)^{-1/2} int f(x) e^{-i xi x} dx` referenced to `x = 0`, so the
/// norm `sqrt(dxi sum |S_k|^2)` equals the signal norm.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSpectrum {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl LineSpectrum {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::LengthMismatch {
                expected: grid.n,
                found: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(LineSpectrum { grid, values })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value at signed frequency index `k`.
    pub fn at(&self, k: i64) -> Option<Complex64> {
        self.grid.bin_of(k).map(|b| self.values[b])
    }

    /// Multiplies bin `k` by `m(xi_k, k)`.
    pub fn apply_multiplier(&self, m: impl Fn(f64, i64) -> Complex64) -> LineSpectrum {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(b, v)| v * m(self.grid.frequency(b), self.grid.signed_index(b)))
            .collect();
        LineSpectrum {
            grid: self.grid,
            values,
        }
    }

    pub fn sub(&self, other: &LineSpectrum) -> Result<LineSpectrum> {
        if self.grid != other.grid {
            return Err(Error::DomainMismatch("spectra on different grids".into()));
        }
        Ok(LineSpectrum {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }
}

impl InnerProductSpace for LineSpectrum {
    fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::DomainMismatch("spectra on different grids".into()));
        }
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.grid.dxi())
    }

    fn norm(&self) -> f64 {
        (self.grid.dxi() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// Unitary discrete Fourier transform of a line signal.
pub fn dft(f: &LineSignal) -> LineSpectrum {
    let grid = f.grid;
    let mut buf = f.values.clone();
    fft_forward(&mut buf);
    let scale = grid.dx / (2.0 * PI).sqrt();
    for (b, v) in buf.iter_mut().enumerate() {
        *v *= Complex64::from_polar(scale, -grid.frequency(b) * grid.x_min);
    }
    LineSpectrum { grid, values: buf }
}

/// Inverse of [`dft`].
pub fn idft(s: &LineSpectrum) -> LineSignal {
    let grid = s.grid;
    let scale = grid.dxi() / (2.0 * PI).sqrt();
    let mut buf: Vec<Complex64> = s
        .values
        .iter()
        .enumerate()
        .map(|(b, v)| v * Complex64::from_polar(scale, grid.frequency(b) * grid.x_min))
        .collect();
    fft_inverse(&mut buf);
    LineSignal { grid, values: buf }
}

/// Fourier coefficients `c_k`, `k in [-K, K]`, of a function on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSignal {
    k_max: usize,
    coeffs: Vec<Complex64>,
}

impl CircleSignal {
    /// `coeffs` ordered from `k = -K` to `k = K`.
    pub fn new(k_max: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * k_max + 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * k_max + 1,
                found: coeffs.len(),
            });
        }
        check_finite(&coeffs)?;
        Ok(CircleSignal { k_max, coeffs })
    }

    pub fn zeros(k_max: usize) -> Self {
        CircleSignal {
            k_max,
            coeffs: vec![ZERO; 2 * k_max + 1],
        }
    }

    /// `value * t^m`.
    pub fn monomial(k_max: usize, m: i64, value: Complex64) -> Result<Self> {
        let mut c = CircleSignal::zeros(k_max);
        c.set(m, value)?;
        Ok(c)
    }

    pub fn from_fn(k_max: usize, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        let k = k_max as i64;
        CircleSignal::new(k_max, (-k..=k).map(f).collect())
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// `c_k`, zero outside the truncation.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.k_max {
            ZERO
        } else {
            self.coeffs[(k + self.k_max as i64) as usize]
        }
    }

    pub fn set(&mut self, k: i64, value: Complex64) -> Result<()> {
        if k.unsigned_abs() as usize > self.k_max {
            return Err(invalid("k", format!("index {k} outside [-{0}, {0}]", self.k_max)));
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFinite {
                index: (k + self.k_max as i64) as usize,
            });
        }
        self.coeffs[(k + self.k_max as i64) as usize] = value;
        Ok(())
    }

    /// `(k, c_k)` pairs in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let k0 = self.k_max as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - k0, c))
    }

    /// Largest `|k|` with a nonzero coefficient, or 0 for the zero signal.
    pub fn degree(&self) -> usize {
        self.iter()
            .filter(|(_, c)| *c != ZERO)
            .map(|(k, _)| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Multiplies `c_k` by `m(k)`.
    pub fn apply_multiplier(&self, m: impl Fn(i64) -> Complex64) -> CircleSignal {
        CircleSignal {
            k_max: self.k_max,
            coeffs: self.iter().map(|(k, c)| c * m(k)).collect(),
        }
    }

    /// Re-truncates to degree `k_max`; fails if nonzero content would be dropped.
    pub fn retruncate(&self, k_max: usize) -> Result<CircleSignal> {
        if self.degree() > k_max {
            return Err(Error::TruncationOverflow {
                required: self.degree(),
                given: k_max,
            });
        }
        CircleSignal::from_fn(k_max, |k| self.coeff(k))
    }

    pub fn scale(&self, s: Complex64) -> CircleSignal {
        self.apply_multiplier(|_| s)
    }

    pub fn add(&self, other: &CircleSignal) -> Result<CircleSignal> {
        self.check_same_k(other)?;
        CircleSignal::new(
            self.k_max,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &CircleSignal) -> Result<CircleSignal> {
        self.check_same_k(other)?;
        CircleSignal::new(
            self.k_max,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Evaluates the truncated series at `e^{i theta}` by Horner's rule.
    pub fn evaluate(&self, theta: f64) -> Complex64 {
        self.evaluate_at(Complex64::from_polar(1.0, theta))
    }

    /// Evaluates `sum_k c_k z^k` at a point `z` on the unit circle.
    pub fn evaluate_at(&self, z: Complex64) -> Complex64 {
        let acc = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        // acc = sum_{i} coeffs[i] z^i = z^K f(z)
        acc * z.powi(-(self.k_max as i32))
    }

    /// Samples at `theta_j = 2 pi j / n`; requires `n >= 2K + 1`.
    pub fn to_samples(&self, n: usize) -> Result<CircleSamples> {
        if n < 2 * self.k_max + 1 {
            return Err(invalid(
                "n",
                format!(
                    "{n} samples cannot carry degree {} (need >= {})",
                    self.k_max,
                    2 * self.k_max + 1
                ),
            ));
        }
        let mut buf = vec![ZERO; n];
        for (k, c) in self.iter() {
            buf[k.rem_euclid(n as i64) as usize] += c;
        }
        fft_inverse(&mut buf);
        Ok(CircleSamples { values: buf })
    }

    pub(crate) fn check_same_k(&self, other: &CircleSignal) -> Result<()> {
        if self.k_max != other.k_max {
            return Err(Error::DomainMismatch(format!(
                "truncation degrees differ: {} vs {}",
                self.k_max, other.k_max
            )));
        }
        Ok(())
    }
}

impl InnerProductSpace for CircleSignal {
    fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_k(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum())
    }

    fn norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Samples `f(e^{i theta_j})`, `theta_j = 2 pi j / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSamples {
    values: Vec<Complex64>,
}

impl CircleSamples {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("n", "need at least one sample"));
        }
        check_finite(&values)?;
        Ok(CircleSamples { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        CircleSamples::new((0..n).map(|j| f(Self::angle_of(j, n))).collect())
    }

    pub fn angle_of(j: usize, n: usize) -> f64 {
        2.0 * PI * j as f64 / n as f64
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &CircleSamples) -> Result<CircleSamples> {
        if self.n() != other.n() {
            return Err(Error::DomainMismatch("sample counts differ".into()));
        }
        Ok(CircleSamples {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// Largest degree recoverable from these samples, `floor((n-1)/2)`.
    pub fn max_degree(&self) -> usize {
        (self.n() - 1) / 2
    }

    /// Fourier coefficients up to degree `k_max <= floor((n-1)/2)`.
    pub fn to_signal(&self, k_max: usize) -> Result<CircleSignal> {
        let n = self.n();
        if k_max > self.max_degree() {
            return Err(invalid(
                "K",
                format!("degree {k_max} exceeds what {n} samples can resolve"),
            ));
        }
        let mut buf = self.values.clone();
        fft_forward(&mut buf);
        let inv = 1.0 / n as f64;
        CircleSignal::from_fn(k_max, |k| buf[k.rem_euclid(n as i64) as usize] * inv)
    }
}

impl InnerProductSpace for CircleSamples {
    fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n() != other.n() {
            return Err(Error::DomainMismatch("sample counts differ".into()));
        }
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s / self.n() as f64)
    }

    fn norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.n() as f64).sqrt()
    }
}
