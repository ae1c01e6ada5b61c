//! Commutator defects against the group actions, and the rotation/orbit
//! test for scalarity on the circle.

use rayon::prelude::*;

use super::matrix::{Basis, OperatorMatrix};
use crate::circle::{semigroup_act, semigroup_act_into, RationalScale};
use crate::error::{Error, Result};
use crate::line::{rep_natural, AffineElement};
use crate::signal::probes::ProbeSet;
use crate::signal::{CircleSignal, InnerProductSpace};

/// A transformation applied to probes through the matching module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    /// `pi(a, b)` on line signals.
    Affine(AffineElement),
    /// `pi(q/p, beta)` on circle coefficients.
    Semigroup(RationalScale),
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Action::Affine(g) => write!(f, "affine(a={}, b={})", g.a(), g.b()),
            Action::Semigroup(r) => write!(f, "semigroup(q={}, p={}, beta={})", r.q(), r.p(), r.beta()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectRecord {
    pub action: Action,
    pub probe: usize,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorReport {
    pub records: Vec<DefectRecord>,
    pub max_defect: f64,
}

fn pad(c: &CircleSignal, k: usize) -> Result<CircleSignal> {
    if c.k_max() == k {
        Ok(c.clone())
    } else {
        c.retruncate(k)
    }
}

fn semigroup_defect(t: &OperatorMatrix, r: &RationalScale, f: &CircleSignal) -> Result<f64> {
    let k = f.k_max();
    let lhs = t.apply_circle(&semigroup_act_into(f, r, k)?)?;
    let rhs = semigroup_act(&t.apply_circle(f)?, r);
    let common = k.max(rhs.k_max());
    Ok(pad(&lhs, common)?.sub(&pad(&rhs, common)?)?.norm())
}

/// `||T(g f) - g(T f)|| / ||f||` for every action and probe.
///
/// Records are ordered by action, then probe; the result is independent of
/// how the work is scheduled.
pub fn commutator_defect(t: &OperatorMatrix, actions: &[Action], probes: &ProbeSet) -> Result<CommutatorReport> {
    let pairs: Vec<(Action, usize)> = actions
        .iter()
        .flat_map(|&a| (0..probes.len()).map(move |p| (a, p)))
        .collect();
    let records: Vec<DefectRecord> = pairs
        .par_iter()
        .map(|&(action, probe)| {
            let (raw, norm) = match (action, probes) {
                (Action::Affine(g), ProbeSet::Line(fs)) => {
                    let f = &fs[probe];
                    let lhs = t.apply_line(&rep_natural(f, &g)?.value)?;
                    let rhs = rep_natural(&t.apply_line(f)?, &g)?.value;
                    (lhs.sub(&rhs)?.norm(), f.norm())
                }
                (Action::Semigroup(r), ProbeSet::Circle(cs)) => {
                    let f = &cs[probe];
                    (semigroup_defect(t, &r, f)?, f.norm())
                }
                _ => {
                    return Err(Error::BasisMismatch(format!(
                        "action {action} does not act on these probes"
                    )))
                }
            };
            let defect = if norm > 0.0 { raw / norm } else { 0.0 };
            Ok(DefectRecord { action, probe, defect })
        })
        .collect::<Result<_>>()?;
    let max_defect = records.iter().map(|r| r.defect).fold(0.0, f64::max);
    Ok(CommutatorReport { records, max_defect })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationReport {
    /// `||offdiag T||_F / ||T||_F`.
    pub diagonal_defect: f64,
    /// Largest `||T R - R T||_F / ||T||_F` over the supplied rotations.
    pub rotation_defect: f64,
    /// Largest `|T_aa - T_bb|` over orbit pairs `(p s, q s)` in `[1, K]`.
    pub orbit_spread: f64,
}

/// Tests whether `T` commutes with rotations (forcing a diagonal matrix) and
/// whether its diagonal is constant along the index orbits of the supplied
/// dilations on `k in [1, K]`.
///
/// `scales` must contain a rotation `(1, 1, beta)` with `beta` not a
/// multiple of `2 pi`, an integer dilation `(q, 1, .)` with `q >= 2`, and a
/// division `(1, p, .)` with `p >= 2`.
pub fn rotation_commutant_analysis(t: &OperatorMatrix, scales: &[RationalScale]) -> Result<RotationReport> {
    let k_max = match t.basis() {
        Basis::Fourier { k_max } => *k_max as i64,
        Basis::Line { .. } => return Err(Error::BasisMismatch("orbit analysis needs a fourier basis".into())),
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let rotations: Vec<f64> = scales
        .iter()
        .filter(|r| r.q() == 1 && r.p() == 1 && (r.beta() / two_pi).fract().abs() > 1e-12)
        .map(|r| r.beta())
        .collect();
    if rotations.is_empty() {
        return Err(Error::Precondition("no nontrivial rotation among the scales".into()));
    }
    if !scales.iter().any(|r| r.q() >= 2 && r.p() == 1) {
        return Err(Error::Precondition(
            "no integer dilation (q >= 2, p = 1) among the scales".into(),
        ));
    }
    if !scales.iter().any(|r| r.q() == 1 && r.p() >= 2) {
        return Err(Error::Precondition(
            "no division (q = 1, p >= 2) among the scales".into(),
        ));
    }

    let n = t.dim();
    let total = t.frobenius();
    let ratio = |x: f64| if total > 0.0 { x / total } else { 0.0 };
    let k_of = |i: usize| i as i64 - k_max;

    let off: f64 = (0..n * n)
        .filter(|e| e / n != e % n)
        .map(|e| t.entries()[e].norm_sqr())
        .sum::<f64>()
        .sqrt();

    // (T R - R T)_{kl} = T_{kl} (e^{i l beta} - e^{i k beta})
    let rotation_defect = rotations
        .iter()
        .map(|&beta| {
            let s: f64 = (0..n * n)
                .map(|e| {
                    let (k, l) = (k_of(e / n) as f64, k_of(e % n) as f64);
                    let phase = num_complex::Complex64::from_polar(1.0, l * beta)
                        - num_complex::Complex64::from_polar(1.0, k * beta);
                    (t.entries()[e] * phase).norm_sqr()
                })
                .sum();
            ratio(s.sqrt())
        })
        .fold(0.0, f64::max);

    let diag = |k: i64| t.get((k + k_max) as usize, (k + k_max) as usize);
    let mut spread = 0.0f64;
    for r in scales.iter().filter(|r| !(r.q() == 1 && r.p() == 1)) {
        let (p, q) = (r.p() as i64, r.q() as i64);
        let mut s = 1;
        while p * s <= k_max && q * s <= k_max {
            spread = spread.max((diag(p * s) - diag(q * s)).norm());
            s += 1;
        }
    }

    Ok(RotationReport {
        diagonal_defect: ratio(off),
        rotation_defect,
        orbit_spread: spread,
    })
}
