use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::signal::CircleSamples;

/// Disc automorphism `phi(z) = e^{i theta} (z - a) / (1 - a z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusElement {
    theta: f64,
    a: f64,
}

impl MoebiusElement {
    pub fn new(theta: f64, a: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(invalid("theta", "must be finite"));
        }
        if !(0.0..1.0).contains(&a) {
            return Err(invalid("a", format!("Blaschke parameter must lie in [0, 1), got {a}")));
        }
        Ok(MoebiusElement { theta, a })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.theta) * (z - self.a) / (1.0 - self.a * z)
    }

    /// `phi^{-1}(t) = (w + a) / (1 + a w)` with `w = e^{-i theta} t`.
    pub fn inverse_apply(&self, t: Complex64) -> Complex64 {
        let w = Complex64::from_polar(1.0, -self.theta) * t;
        (w + self.a) / (1.0 + self.a * w)
    }
}

/// Multiplier paired with `f(phi^{-1}(t))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoebiusWeight {
    /// `sqrt(1 - a^2) / (1 - a t)`, the normalized Szego kernel at `a`.
    SzegoKernel,
    /// `sqrt(1 - a^2) / (1 + a e^{-i theta} t)`, the analytic square root of
    /// the derivative of `phi^{-1}`; makes the action unitary.
    #[default]
    Jacobian,
}

/// `(pi(phi) f)(t) = weight(t) f(phi^{-1}(t))` on the sample nodes. `f` is
/// evaluated off the nodes through its trigonometric interpolant of degree
/// `(n - 1) / 2`.
pub fn moebius_act(s: &CircleSamples, m: &MoebiusElement, weight: MoebiusWeight) -> Result<CircleSamples> {
    let n = s.n();
    let series = s.to_signal(s.max_degree())?;
    let a = m.a;
    let root = (1.0 - a * a).sqrt();
    let rot = Complex64::from_polar(1.0, -m.theta);
    CircleSamples::from_fn(n, |angle| {
        let t = Complex64::from_polar(1.0, angle);
        let w = match weight {
            MoebiusWeight::SzegoKernel => root / (1.0 - a * t),
            MoebiusWeight::Jacobian => root / (1.0 + a * rot * t),
        };
        w * series.evaluate_at(m.inverse_apply(t))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::probes::{make_probes, ProbeKind, TrigPolyParams};
    use crate::signal::{CircleSignal, InnerProductSpace};

    fn probes() -> Vec<CircleSamples> {
        let kind = ProbeKind::TrigPoly(TrigPolyParams { k_max: 16, degree: 16 });
        make_probes(&kind, 5, 7)
            .unwrap()
            .into_circle()
            .unwrap()
            .iter()
            .map(|f| f.to_samples(512).unwrap())
            .collect()
    }

    #[test]
    fn element_validation_and_inverse() {
        assert!(MoebiusElement::new(0.0, 1.0).is_err());
        assert!(MoebiusElement::new(0.0, -0.1).is_err());
        let m = MoebiusElement::new(0.8, 0.6).unwrap();
        let z = Complex64::from_polar(1.0, 2.1);
        assert!((m.apply(m.inverse_apply(z)) - z).norm() < 1e-14);
        assert!((m.apply(z).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_and_rotation() {
        let s = &probes()[0];
        let id = moebius_act(s, &MoebiusElement::new(0.0, 0.0).unwrap(), MoebiusWeight::SzegoKernel).unwrap();
        assert!(id.sub(s).unwrap().max_abs() < 1e-12);
        let theta = 0.7;
        let series = s.to_signal(s.max_degree()).unwrap();
        let rotated = CircleSamples::from_fn(s.n(), |x| series.evaluate(x - theta)).unwrap();
        for weight in [MoebiusWeight::SzegoKernel, MoebiusWeight::Jacobian] {
            let out = moebius_act(s, &MoebiusElement::new(theta, 0.0).unwrap(), weight).unwrap();
            assert!(out.sub(&rotated).unwrap().max_abs() < 1e-12);
        }
    }

    #[test]
    fn jacobian_weight_is_unitary() {
        for s in probes() {
            for (theta, a) in [(0.0, 0.3), (1.1, 0.7), (2.0, 0.0)] {
                let m = MoebiusElement::new(theta, a).unwrap();
                let out = moebius_act(&s, &m, MoebiusWeight::Jacobian).unwrap();
                assert!((out.norm() / s.norm() - 1.0).abs() <= 1e-8, "a={a}");
            }
        }
    }

    #[test]
    fn szego_weight_is_not_unitary_off_rotations() {
        // unimodular inputs only see the Poisson kernel, which integrates to 1
        let f = CircleSignal::from_fn(4, |k| Complex64::new(if k == 0 || k == 1 { 1.0 } else { 0.0 }, 0.0)).unwrap();
        let s = f.to_samples(512).unwrap();
        let m = MoebiusElement::new(0.0, 0.5).unwrap();
        let ratio = moebius_act(&s, &m, MoebiusWeight::SzegoKernel).unwrap().norm() / s.norm();
        assert!((ratio - 1.0).abs() > 1e-3, "ratio {ratio}");
    }
}
