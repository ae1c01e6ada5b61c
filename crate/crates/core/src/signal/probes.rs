//! Deterministic test-signal generators.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{idft, CircleSignal, Grid1D, InnerProductSpace, LineSignal, LineSpectrum, ZERO};
use crate::error::{invalid, Error, Result};

/// Spectral distance (in units of `1/width`) at which a Gaussian packet's
/// spectrum has fallen to `e^{-32}`.
pub const PACKET_SPECTRAL_REACH: f64 = 8.0;
/// Spatial distance (in units of `width`) at which the envelope has fallen to `e^{-32}`.
pub const PACKET_SPATIAL_REACH: f64 = 8.0;

/// Modulated Gaussian packets `exp(-(x-c)^2 / 2w^2) * carrier(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPacketParams {
    pub grid: Grid1D,
    pub width: (f64, f64),
    pub center: (f64, f64),
    pub carrier: (f64, f64),
    /// Real packets use `cos(xi0 x + phase)`, complex ones `exp(i(xi0 x + phase))`.
    pub real: bool,
}

impl GaussianPacketParams {
    /// Unmodulated Gaussian of fixed width centered at the origin.
    pub fn centered(grid: Grid1D, width: f64) -> Self {
        GaussianPacketParams {
            grid,
            width: (width, width),
            center: (0.0, 0.0),
            carrier: (0.0, 0.0),
            real: true,
        }
    }

    /// Real packets whose spectrum is negligible near `xi = 0` and that stay
    /// inside both the grid and its frequency band under every dilation
    /// `a in [a_min, a_max]`.
    pub fn guarded(grid: Grid1D, a_min: f64, a_max: f64) -> Result<Self> {
        if !(a_min > 0.0 && a_max >= a_min) {
            return Err(invalid("a_min", "need 0 < a_min <= a_max"));
        }
        let center_max = 1.0;
        let half = 0.5 * grid.length();
        let w_hi = ((half / a_max.max(1.0) - center_max) / PACKET_SPATIAL_REACH).min(1.5);
        let w_lo = 0.8 * w_hi;
        let xi_lo = PACKET_SPECTRAL_REACH / w_lo;
        let xi_hi = (a_min.min(1.0) * grid.nyquist() - PACKET_SPECTRAL_REACH / w_lo).min(0.5 * grid.nyquist());
        if w_hi <= 0.0 || xi_hi < xi_lo {
            return Err(invalid(
                "grid",
                format!("no guarded packet fits dilations [{a_min}, {a_max}] on this grid"),
            ));
        }
        let mid = grid.x_min() + half;
        Ok(GaussianPacketParams {
            grid,
            width: (w_lo, w_hi),
            center: (mid - center_max, mid + center_max),
            carrier: (xi_lo, xi_hi),
            real: true,
        })
    }
}

/// Random spectra supported in `|xi| <= band_fraction * nyquist`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedParams {
    pub grid: Grid1D,
    pub band_fraction: f64,
}

/// Random trigonometric polynomials of fixed degree on a truncation `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolyParams {
    pub k_max: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeKind {
    GaussianPacket(GaussianPacketParams),
    TrigPoly(TrigPolyParams),
    RandomBandlimited(BandlimitedParams),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeSet {
    Line(Vec<LineSignal>),
    Circle(Vec<CircleSignal>),
}

impl ProbeSet {
    pub fn len(&self) -> usize {
        match self {
            ProbeSet::Line(v) => v.len(),
            ProbeSet::Circle(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn into_line(self) -> Result<Vec<LineSignal>> {
        match self {
            ProbeSet::Line(v) => Ok(v),
            ProbeSet::Circle(_) => Err(Error::DomainMismatch("expected line probes".into())),
        }
    }

    pub fn into_circle(self) -> Result<Vec<CircleSignal>> {
        match self {
            ProbeSet::Circle(v) => Ok(v),
            ProbeSet::Line(_) => Err(Error::DomainMismatch("expected circle probes".into())),
        }
    }
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

fn check_range(name: &'static str, (lo, hi): (f64, f64)) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
        return Err(invalid(name, format!("bad range [{lo}, {hi}]")));
    }
    Ok(())
}

fn target_norm(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.5..2.0)
}

/// Generates `count` probes; identical for identical `(kind, count, seed)`.
pub fn make_probes(kind: &ProbeKind, count: usize, seed: u64) -> Result<ProbeSet> {
    if count == 0 {
        return Err(invalid("count", "need at least one probe"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ProbeKind::GaussianPacket(p) => {
            check_range("width", p.width)?;
            check_range("center", p.center)?;
            check_range("carrier", p.carrier)?;
            if p.width.0 <= 0.0 {
                return Err(invalid("width", "widths must be positive"));
            }
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let w = draw(&mut rng, p.width);
                let c = draw(&mut rng, p.center);
                let xi0 = draw(&mut rng, p.carrier);
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                let norm = target_norm(&mut rng);
                let f = LineSignal::from_fn(p.grid, |x| {
                    let env = (-(x - c).powi(2) / (2.0 * w * w)).exp();
                    if p.real {
                        Complex64::new(env * (xi0 * x + phase).cos(), 0.0)
                    } else {
                        Complex64::from_polar(env, xi0 * x + phase)
                    }
                })?;
                out.push(normalized_line(f, norm)?);
            }
            Ok(ProbeSet::Line(out))
        }
        ProbeKind::RandomBandlimited(p) => {
            if !(p.band_fraction > 0.0 && p.band_fraction <= 0.5) {
                return Err(invalid("band_fraction", "must lie in (0, 0.5]"));
            }
            let limit = p.band_fraction * p.grid.nyquist();
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let values = (0..p.grid.n())
                    .map(|b| {
                        if p.grid.frequency(b).abs() <= limit {
                            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                        } else {
                            ZERO
                        }
                    })
                    .collect();
                let norm = target_norm(&mut rng);
                let f = idft(&LineSpectrum::new(p.grid, values)?);
                out.push(normalized_line(f, norm)?);
            }
            Ok(ProbeSet::Line(out))
        }
        ProbeKind::TrigPoly(p) => {
            if p.degree > p.k_max {
                return Err(invalid(
                    "degree",
                    format!("degree {} exceeds truncation {}", p.degree, p.k_max),
                ));
            }
            let d = p.degree as i64;
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let mut c = CircleSignal::zeros(p.k_max);
                for k in -d..=d {
                    c.set(
                        k,
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                    )?;
                }
                let norm = target_norm(&mut rng);
                let scale = norm / c.norm();
                out.push(c.scale(Complex64::new(scale, 0.0)));
            }
            Ok(ProbeSet::Circle(out))
        }
    }
}

fn normalized_line(f: LineSignal, norm: f64) -> Result<LineSignal> {
    let current = f.norm();
    if current == 0.0 {
        return Err(invalid("params", "probe vanishes on the grid"));
    }
    Ok(f.scale(Complex64::new(norm / current, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::dft;

    fn grid() -> Grid1D {
        Grid1D::over(-40.0, 40.0, 4096).unwrap()
    }

    #[test]
    fn probes_are_deterministic_per_seed() {
        let kind = ProbeKind::GaussianPacket(GaussianPacketParams::guarded(grid(), 0.5, 4.0).unwrap());
        let a = make_probes(&kind, 3, 17).unwrap();
        let b = make_probes(&kind, 3, 17).unwrap();
        let c = make_probes(&kind, 3, 18).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn probe_norms_lie_in_range() {
        let kinds = [
            ProbeKind::GaussianPacket(GaussianPacketParams::centered(grid(), 1.0)),
            ProbeKind::RandomBandlimited(BandlimitedParams {
                grid: grid(),
                band_fraction: 0.4,
            }),
        ];
        for kind in &kinds {
            for f in make_probes(kind, 5, 3).unwrap().into_line().unwrap() {
                assert!((0.5..=2.0).contains(&f.norm()));
            }
        }
        let trig = make_probes(&ProbeKind::TrigPoly(TrigPolyParams { k_max: 16, degree: 4 }), 5, 3)
            .unwrap()
            .into_circle()
            .unwrap();
        assert!(trig.iter().all(|c| (0.5..=2.0).contains(&(c.norm() * (1.0 + 1e-15)))));
    }

    #[test]
    fn gaussian_tail_mass_outside_grid_is_negligible() {
        // |f|^2 = e^{-x^2}; int_X^inf e^{-x^2} dx <= e^{-X^2}/(2X)
        let x = 40.0f64;
        let tail = 2.0 * (-x * x).exp() / (2.0 * x);
        let total = std::f64::consts::PI.sqrt();
        assert!(tail / total <= 1e-10);
        // and the sampled probe carries its full analytic norm
        let f = make_probes(
            &ProbeKind::GaussianPacket(GaussianPacketParams::centered(grid(), 1.0)),
            1,
            0,
        )
        .unwrap()
        .into_line()
        .unwrap()
        .remove(0);
        let edge = f.values()[0].norm().max(f.values()[4095].norm());
        assert!(edge <= 1e-10 * f.max_abs());
    }

    #[test]
    fn trig_poly_support_is_bounded_by_degree() {
        let c = make_probes(&ProbeKind::TrigPoly(TrigPolyParams { k_max: 64, degree: 5 }), 4, 9)
            .unwrap()
            .into_circle()
            .unwrap();
        for f in &c {
            for (k, v) in f.iter() {
                if k.abs() > 5 {
                    assert_eq!(v, ZERO);
                }
            }
        }
    }

    #[test]
    fn bandlimited_mass_sits_in_central_half() {
        let fs = make_probes(
            &ProbeKind::RandomBandlimited(BandlimitedParams {
                grid: grid(),
                band_fraction: 0.5,
            }),
            4,
            1,
        )
        .unwrap()
        .into_line()
        .unwrap();
        for f in fs {
            let s = dft(&f);
            let g = s.grid();
            let total: f64 = s.values().iter().map(|v| v.norm_sqr()).sum();
            let inside: f64 = s
                .values()
                .iter()
                .enumerate()
                .filter(|(b, _)| g.frequency(*b).abs() <= 0.5 * g.nyquist())
                .map(|(_, v)| v.norm_sqr())
                .sum();
            assert!(inside >= (1.0 - 1e-8) * total);
        }
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let mut p = GaussianPacketParams::centered(grid(), 1.0);
        p.width = (0.0, 0.0);
        assert!(make_probes(&ProbeKind::GaussianPacket(p), 1, 0).is_err());
        assert!(make_probes(&ProbeKind::TrigPoly(TrigPolyParams { k_max: 3, degree: 4 }), 1, 0).is_err());
        assert!(make_probes(&ProbeKind::TrigPoly(TrigPolyParams { k_max: 3, degree: 1 }), 0, 0).is_err());
        assert!(make_probes(
            &ProbeKind::RandomBandlimited(BandlimitedParams {
                grid: grid(),
                band_fraction: 0.7
            }),
            1,
            0
        )
        .is_err());
        let small = Grid1D::over(-40.0, 40.0, 8).unwrap();
        assert!(GaussianPacketParams::guarded(small, 0.5, 4.0).is_err());
    }
}
