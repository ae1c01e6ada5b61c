use std::f64::consts::PI;

use num_complex::Complex64;

use super::{dilate, translate, Flagged};
use crate::error::{invalid, Result};
use crate::signal::fourier::chirp_sum;
use crate::signal::{dft, InnerProductSpace, LineSignal, LineSpectrum, ZERO};

/// Element `x -> a x + b` of the affine group with `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineElement {
    a: f64,
    b: f64,
}

impl AffineElement {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(invalid("a", format!("must be positive and finite, got {a}")));
        }
        if !b.is_finite() {
            return Err(invalid("b", format!("must be finite, got {b}")));
        }
        Ok(AffineElement { a, b })
    }

    pub fn identity() -> Self {
        AffineElement { a: 1.0, b: 0.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `(a, b)(a', b') = (a a', b + a b')`, i.e. `self` applied after `other`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            a: self.a * other.a,
            b: self.b + self.a * other.b,
        }
    }

    pub fn inverse(&self) -> AffineElement {
        AffineElement {
            a: 1.0 / self.a,
            b: -self.b / self.a,
        }
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.a * x + self.b
    }
}

/// `(pi(g) f)(x) = a^{-1/2} f((x - b) / a)`: dilate, then translate.
pub fn rep_natural(f: &LineSignal, g: &AffineElement) -> Result<Flagged<LineSignal>> {
    let d = dilate(f, g.a)?;
    translate(&d, g.b)
}

/// The frequency-side operator `(M(g) s)(xi) = a^{1/2} e^{-i b xi} s(a xi)`
/// applied to the transform of `f`.
///
/// `s(a xi_k)` is the continuous transform of the sampled signal evaluated off
/// the bin lattice through a chirp sum, so this path shares no code with
/// [`dilate`]. Bins whose source frequency lies beyond Nyquist read zero.
pub fn spectral_intertwiner(f: &LineSignal, g: &AffineElement) -> LineSpectrum {
    let grid = *f.grid();
    let n = grid.n();
    let a = g.a;
    let (k_lo, _) = grid.index_range();
    let step = 2.0 * PI * a / n as f64;
    let weighted: Vec<Complex64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| v * Complex64::from_polar(1.0, -step * k_lo as f64 * j as f64))
        .collect();
    let sums = chirp_sum(&weighted, -step, n);
    let scale = grid.dx() / (2.0 * PI).sqrt() * a.sqrt();
    let half = n as f64 / 2.0;
    let mut values = vec![ZERO; n];
    for (m, s) in sums.iter().enumerate() {
        let k = k_lo + m as i64;
        if (a * k as f64).abs() > half * (1.0 + 1e-12) {
            continue;
        }
        let xi = k as f64 * grid.dxi();
        let phase = -a * xi * grid.x_min() - g.b * xi;
        let bin = grid.bin_of(k).expect("k in index range");
        values[bin] = s * Complex64::from_polar(scale, phase);
    }
    LineSpectrum::new(grid, values).expect("length matches grid")
}

/// `||F pi(g) f - M(g) F f|| / ||f||`.
pub fn intertwine_defect(f: &LineSignal, g: &AffineElement) -> Result<f64> {
    let norm = f.norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let lhs = dft(&rep_natural(f, g)?.value);
    let rhs = spectral_intertwiner(f, g);
    Ok(lhs.sub(&rhs)?.norm() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::probes::{make_probes, GaussianPacketParams, ProbeKind};
    use crate::signal::Grid1D;
    use proptest::prelude::*;

    fn grid() -> Grid1D {
        Grid1D::over(-40.0, 40.0, 4096).unwrap()
    }

    #[test]
    fn group_law_and_inverse() {
        let g = AffineElement::new(2.0, 1.0).unwrap();
        let h = AffineElement::new(3.0, 4.0).unwrap();
        assert_eq!(g.compose(&h), AffineElement::new(6.0, 9.0).unwrap());
        let e = g.compose(&g.inverse());
        assert!((e.a() - 1.0).abs() < 1e-15 && e.b().abs() < 1e-15);
        assert!(AffineElement::new(0.0, 1.0).is_err());
        assert!(AffineElement::new(1.0, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn composition_matches_function_composition(
            a1 in 0.1f64..10.0, b1 in -5.0f64..5.0,
            a2 in 0.1f64..10.0, b2 in -5.0f64..5.0, x in -3.0f64..3.0,
        ) {
            let g = AffineElement::new(a1, b1).unwrap();
            let h = AffineElement::new(a2, b2).unwrap();
            let lhs = g.compose(&h).apply(x);
            let rhs = g.apply(h.apply(x));
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
            let back = g.inverse().apply(g.apply(x));
            prop_assert!((back - x).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let f = LineSignal::from_fn(grid(), |x| Complex64::new((-x * x).exp(), 0.0)).unwrap();
        assert_eq!(rep_natural(&f, &AffineElement::identity()).unwrap().value, f);
    }

    #[test]
    fn natural_representation_is_a_homomorphism() {
        let f = LineSignal::from_fn(grid(), |x| Complex64::new((-x * x / 0.5).exp(), 0.0)).unwrap();
        let g = AffineElement::new(2.0, 1.0).unwrap();
        let h = AffineElement::new(1.5, -0.5).unwrap();
        let lhs = rep_natural(&f, &g.compose(&h)).unwrap().value;
        let rhs = rep_natural(&rep_natural(&f, &h).unwrap().value, &g).unwrap().value;
        assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-8 * f.norm());
    }

    #[test]
    fn fourier_transform_intertwines_the_two_actions() {
        let p = GaussianPacketParams::guarded(grid(), 0.5, 4.0).unwrap();
        let probes = make_probes(&ProbeKind::GaussianPacket(p), 4, 3)
            .unwrap()
            .into_line()
            .unwrap();
        for f in &probes {
            for (a, b) in [(0.5, 0.0), (2.0, 1.5), (4.0, -3.25), (1.0, 0.7)] {
                let g = AffineElement::new(a, b).unwrap();
                let d = intertwine_defect(f, &g).unwrap();
                assert!(d <= 1e-8, "a={a} b={b} defect {d}");
            }
        }
    }

    #[test]
    fn spectral_intertwiner_at_identity_is_the_dft() {
        let f = LineSignal::from_fn(grid(), |x| Complex64::new((-x * x).exp(), x.sin())).unwrap();
        let direct = dft(&f);
        let chirped = spectral_intertwiner(&f, &AffineElement::identity());
        assert!(direct.sub(&chirped).unwrap().norm() <= 1e-11 * direct.norm());
    }
}
