use crate::error::{invalid, Error, Result};
use crate::signal::{CircleSignal, ZERO};

/// Relative threshold below which a computed coefficient counts as zero.
pub const ZERO_SET_EPS: f64 = 1e-12;

/// A non-empty family of circle signals sharing one truncation degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalFamily {
    members: Vec<CircleSignal>,
}

impl SignalFamily {
    pub fn new(members: Vec<CircleSignal>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| invalid("members", "family must be non-empty"))?;
        let k = first.k_max();
        if let Some(bad) = members.iter().find(|m| m.k_max() != k) {
            return Err(Error::DomainMismatch(format!(
                "family members have degrees {k} and {}",
                bad.k_max()
            )));
        }
        Ok(SignalFamily { members })
    }

    pub fn members(&self) -> &[CircleSignal] {
        &self.members
    }

    pub fn k_max(&self) -> usize {
        self.members[0].k_max()
    }

    fn max_abs(&self) -> f64 {
        self.members.iter().map(CircleSignal::max_abs).fold(0.0, f64::max)
    }
}

/// `(1/2pi) int f(e^{i(theta - s)}) g(e^{is}) ds`, i.e. `f_k g_k`.
pub fn circular_convolve(f: &CircleSignal, g: &CircleSignal) -> Result<CircleSignal> {
    f.check_same_k(g)?;
    Ok(CircleSignal::from_fn(f.k_max(), |k| f.coeff(k) * g.coeff(k)).expect("same degree"))
}

/// Indices at which every member vanishes (exactly, or below
/// [`ZERO_SET_EPS`] relative to the largest coefficient in the family).
pub fn zero_set(fam: &SignalFamily) -> Vec<i64> {
    let cutoff = ZERO_SET_EPS * fam.max_abs();
    let k = fam.k_max() as i64;
    (-k..=k)
        .filter(|&i| fam.members.iter().all(|m| m.coeff(i).norm() <= cutoff))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Annihilation {
    /// Every convolution vanishes, and `phi` is zero.
    Zero,
    /// `f_k phi_k != 0` for the given member and index.
    Witness { index: i64, member: usize },
}

/// Decides whether `phi` is annihilated by convolution with every member.
///
/// Requires an empty zero set. The witness is the largest `|f_k phi_k|`,
/// ties broken by index, then by member order.
pub fn annihilator_witness(fam: &SignalFamily, phi: &CircleSignal) -> Result<Annihilation> {
    if phi.k_max() != fam.k_max() {
        return Err(Error::DomainMismatch(format!(
            "phi has degree {} but the family has degree {}",
            phi.k_max(),
            fam.k_max()
        )));
    }
    let zeros = zero_set(fam);
    if !zeros.is_empty() {
        return Err(Error::Precondition(format!("family vanishes at indices {zeros:?}")));
    }
    let threshold = ZERO_SET_EPS * fam.max_abs() * phi.max_abs();
    let mut best: Option<(f64, i64, usize)> = None;
    for (member, f) in fam.members.iter().enumerate() {
        for (k, v) in f.iter() {
            let mag = (v * phi.coeff(k)).norm();
            if mag > threshold && best.is_none_or(|(b, _, _)| mag > b) {
                best = Some((mag, k, member));
            }
        }
    }
    match best {
        Some((_, index, member)) => Ok(Annihilation::Witness { index, member }),
        None if phi.coeffs().iter().all(|c| *c == ZERO) => Ok(Annihilation::Zero),
        None => Err(Error::Internal(
            "every convolution vanishes on a family with empty zero set, yet phi is nonzero".into(),
        )),
    }
}
