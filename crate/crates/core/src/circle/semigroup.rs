use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::signal::{CircleSamples, CircleSignal, ZERO};

/// The semigroup element `alpha = q / p` with phase `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalScale {
    q: u32,
    p: u32,
    beta: f64,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalScale {
    pub fn new(q: u32, p: u32, beta: f64) -> Result<Self> {
        if q == 0 || p == 0 {
            return Err(invalid("q/p", format!("both must be positive, got q={q} p={p}")));
        }
        if gcd(q, p) != 1 {
            return Err(invalid("q/p", format!("q={q} and p={p} are not coprime")));
        }
        if !beta.is_finite() {
            return Err(invalid("beta", "must be finite"));
        }
        Ok(RationalScale { q, p, beta })
    }

    pub fn rotation(beta: f64) -> Result<Self> {
        Self::new(1, 1, beta)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(p/q)^{1/2}`.
    pub fn weight(&self) -> f64 {
        (self.p as f64 / self.q as f64).sqrt()
    }

    /// Output degree that holds every input of degree `k_max`.
    pub fn default_output_degree(&self, k_max: usize) -> usize {
        self.q as usize * (k_max / self.p as usize)
    }
}

/// [`semigroup_act_into`] with the default output degree `q * floor(K / p)`.
pub fn semigroup_act(c: &CircleSignal, r: &RationalScale) -> CircleSignal {
    semigroup_act_into(c, r, r.default_output_degree(c.k_max())).expect("default degree holds the image")
}

/// Coefficient form of the rational dilation: input mode `p s` moves to
/// output mode `q s` with factor `(p/q)^{1/2} e^{i p s beta}`; modes not
/// divisible by `p` are annihilated.
///
/// Fails if a surviving mode would land beyond `k_out`.
pub fn semigroup_act_into(c: &CircleSignal, r: &RationalScale, k_out: usize) -> Result<CircleSignal> {
    let (p, q) = (r.p as i64, r.q as i64);
    let k_in = c.k_max() as i64;
    let mut out = CircleSignal::zeros(k_out);
    let mut required = 0usize;
    for s in -(k_in / p)..=(k_in / p) {
        let v = c.coeff(p * s);
        if v == ZERO {
            continue;
        }
        let target = q * s;
        required = required.max(target.unsigned_abs() as usize);
        if target.unsigned_abs() as usize > k_out {
            continue;
        }
        let phase = Complex64::from_polar(r.weight(), (p * s) as f64 * r.beta);
        out.set(target, v * phase)?;
    }
    if required > k_out {
        return Err(Error::TruncationOverflow { required, given: k_out });
    }
    Ok(out)
}

/// The averaged definition evaluated pointwise at `theta`:
/// `(p/q)^{1/2} (1/p) sum_r f(e^{i(q theta / p + beta)} w_p^r)`.
pub fn semigroup_oracle(c: &CircleSignal, r: &RationalScale, theta: f64) -> Complex64 {
    let p = r.p as f64;
    let base = r.q as f64 * theta / p + r.beta;
    let total: Complex64 = (0..r.p)
        .map(|j| c.evaluate(base + 2.0 * std::f64::consts::PI * j as f64 / p))
        .sum();
    total * (r.weight() / p)
}

/// Samples of the averaged definition at `theta_j = 2 pi j / n`.
pub fn semigroup_act_samples(c: &CircleSignal, r: &RationalScale, n: usize) -> Result<CircleSamples> {
    CircleSamples::from_fn(n, |theta| semigroup_oracle(c, r, theta))
}
