//! Operators on the unit circle: the circular Hilbert transform, the two
//! singular Cauchy operators, Plemelj projections, the rational-dilation
//! semigroup, the Möbius action, and convolution with its zero set.

mod family;
mod moebius;
mod semigroup;

pub use family::{annihilator_witness, circular_convolve, zero_set, Annihilation, SignalFamily, ZERO_SET_EPS};
pub use moebius::{moebius_act, MoebiusElement, MoebiusWeight};
pub use semigroup::{semigroup_act, semigroup_act_into, semigroup_act_samples, semigroup_oracle, RationalScale};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::signal::{CircleSamples, CircleSignal, ZERO};

/// `-i sgn(k)`, with `0` at `k = 0`.
pub fn circular_hilbert_symbol(k: i64) -> Complex64 {
    Complex64::new(0.0, -(k.signum() as f64))
}

/// `c'_k = -i sgn(k) c_k`.
pub fn circular_hilbert(c: &CircleSignal) -> CircleSignal {
    c.apply_multiplier(circular_hilbert_symbol)
}

/// The zeroth Fourier coefficient.
pub fn mean_functional(c: &CircleSignal) -> Complex64 {
    c.coeff(0)
}

/// `+1/2` on `k >= 0` and `-1/2` on `k < 0`; equals `(i/2) H~ + (1/2) c_0`.
pub fn cauchy_pv(c: &CircleSignal) -> CircleSignal {
    c.apply_multiplier(|k| Complex64::new(if k >= 0 { 0.5 } else { -0.5 }, 0.0))
}

/// `+1` on `k >= 0` and `-1` on `k < 0`, so that `P+- = (I +- S) / 2`.
pub fn cauchy_symbol(c: &CircleSignal) -> CircleSignal {
    c.apply_multiplier(|k| Complex64::new(if k >= 0 { 1.0 } else { -1.0 }, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlemeljPart {
    /// `k >= 0`
    Plus,
    /// `k = 0`
    Zero,
    /// `k < 0`
    Minus,
    /// `k >= 1`
    PlusTilde,
}

pub fn plemelj_contains(part: PlemeljPart, k: i64) -> bool {
    match part {
        PlemeljPart::Plus => k >= 0,
        PlemeljPart::Zero => k == 0,
        PlemeljPart::Minus => k < 0,
        PlemeljPart::PlusTilde => k >= 1,
    }
}

pub fn plemelj_project(c: &CircleSignal, part: PlemeljPart) -> CircleSignal {
    c.apply_multiplier(|k| {
        if plemelj_contains(part, k) {
            Complex64::new(1.0, 0.0)
        } else {
            ZERO
        }
    })
}

/// Principal-value quadrature of `(1/2pi) p.v. int f(e^{is}) cot((theta - s)/2) ds`.
///
/// The singular node is dropped and the remaining nodes are paired as
/// `theta -+ t`; only odd offsets enter, which makes this the midpoint rule of
/// the smooth periodic integrand `(f(theta - t) - f(theta + t)) cot(t/2)`.
pub fn circular_hilbert_quadrature(s: &CircleSamples) -> Result<CircleSamples> {
    let n = s.n();
    if !n.is_multiple_of(2) {
        return Err(invalid(
            "n",
            format!("quadrature pairs nodes around the singularity and needs even n, got {n}"),
        ));
    }
    let v = s.values();
    let weights: Vec<(usize, f64)> = (1..n / 2)
        .step_by(2)
        .map(|m| (m, 2.0 / n as f64 / (PI * m as f64 / n as f64).tan()))
        .collect();
    let out = (0..n)
        .map(|i| {
            weights
                .iter()
                .map(|&(m, w)| (v[(i + n - m) % n] - v[(i + m) % n]) * w)
                .sum()
        })
        .collect();
    CircleSamples::new(out)
}
