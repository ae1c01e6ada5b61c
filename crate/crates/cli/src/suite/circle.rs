use hilbert_core::circle::{
    cauchy_pv, cauchy_symbol, circular_hilbert, circular_hilbert_quadrature, mean_functional, moebius_act,
    plemelj_project, semigroup_act, semigroup_act_samples, MoebiusElement, MoebiusWeight, PlemeljPart, RationalScale,
};
use hilbert_core::signal::probes::TrigPolyParams;
use hilbert_core::{make_probes, CircleSamples, CircleSignal, Complex64, Error, InnerProductSpace, ProbeKind};

use super::{max_of, seed, Check, Measured, Outcome};
use crate::config::SuiteConfig;
use crate::report::CheckRecord;

const A02: Check = Check::at_most("A02-circle", "H~^2 = -I + H0 on the circle");
const A04: Check = Check::at_most("A04", "Plemelj relation S = 2C = iH~ + H0 and P+ + P- = I");
const A05: Check = Check::at_most("A05", "rational dilation: closed form equals the root-of-unity average");
const A06: Check = Check::at_most("A06", "H~ commutes with the rational-dilation semigroup");
const A11_UNITARY: Check = Check::at_most("A11-unitary", "Moebius action with Jacobian weight is unitary");
const A11_SZEGO_NORM: Check = Check::report(
    "A11-szego-weight-norm",
    "Moebius action with the Szego-kernel weight: norm drift",
);
const A11_COMM_JAC: Check = Check::report("A11-commutator-jacobian", "Moebius action vs C, Jacobian weight");
const A11_COMM_SZEGO: Check = Check::report("A11-commutator-szego", "Moebius action vs C, Szego-kernel weight");
const MEAN: Check = Check::at_most("C-mean", "mean scales by (p/q)^{1/2} under the semigroup");
const COMPOSITION: Check = Check::at_most("C-composition", "pi(q/p, b) = pi(q, 0) pi(1/p, b)");
const INVARIANCE: Check = Check::at_most("C-invariance", "semigroup preserves H~+ and H-");
const QUADRATURE: Check = Check::at_most("C-quadrature", "cotangent-kernel p.v. integral vs multiplier");

fn trig_probes(
    cfg: &SuiteConfig,
    k_max: usize,
    degree: usize,
    count: usize,
    salt: u64,
) -> Result<Vec<CircleSignal>, Error> {
    let kind = ProbeKind::TrigPoly(TrigPolyParams { k_max, degree });
    make_probes(&kind, count, seed(cfg, salt))?.into_circle()
}

fn full_probes(cfg: &SuiteConfig, salt: u64) -> Result<Vec<CircleSignal>, Error> {
    let k = cfg.circle.k_max;
    trig_probes(cfg, k, k, cfg.count("circle"), salt)
}

fn scales(cfg: &SuiteConfig) -> Result<Vec<RationalScale>, Error> {
    cfg.rational_set
        .iter()
        .map(|&(q, p, b)| RationalScale::new(q, p, b))
        .collect()
}

fn max_coeff(c: &CircleSignal) -> f64 {
    c.max_abs()
}

fn involution(cfg: &SuiteConfig) -> Outcome {
    max_of(full_probes(cfg, 11)?.iter().map(|f| {
        let hh = circular_hilbert(&circular_hilbert(f));
        let mut expected = f.scale(Complex64::new(-1.0, 0.0));
        expected.set(0, Complex64::new(0.0, 0.0))?;
        Ok(hh.sub(&expected)?.norm())
    }))
    .map(Measured::new)
}

fn plemelj(cfg: &SuiteConfig) -> Outcome {
    max_of(full_probes(cfg, 12)?.iter().map(|f| {
        let s = cauchy_symbol(f);
        let two_c = cauchy_pv(f).scale(Complex64::new(2.0, 0.0));
        let mut via_h = circular_hilbert(f).scale(Complex64::new(0.0, 1.0));
        via_h.set(0, via_h.coeff(0) + mean_functional(f))?;
        let half = Complex64::new(0.5, 0.0);
        let p_plus = f.add(&s)?.scale(half);
        let p_minus = f.sub(&s)?.scale(half);
        let masks = plemelj_project(f, PlemeljPart::Plus).add(&plemelj_project(f, PlemeljPart::Minus))?;
        Ok([
            max_coeff(&s.sub(&two_c)?),
            max_coeff(&s.sub(&via_h)?),
            max_coeff(&p_plus.add(&p_minus)?.sub(f)?),
            max_coeff(&p_plus.sub(&plemelj_project(f, PlemeljPart::Plus))?),
            max_coeff(&masks.sub(f)?),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }))
    .map(Measured::new)
}

fn closed_form_vs_average(cfg: &SuiteConfig) -> Outcome {
    let probes = full_probes(cfg, 13)?;
    let rs = scales(cfg)?;
    let worst = max_of(rs.iter().flat_map(|r| {
        probes.iter().map(move |f| {
            let closed = semigroup_act(f, r);
            let n = 2 * closed.k_max() + 2;
            let sampled = semigroup_act_samples(f, r, n)?.to_signal(closed.k_max())?;
            Ok(max_coeff(&closed.sub(&sampled)?))
        })
    }))?;
    Ok(Measured::with(
        worst,
        format!("{} scales x {} probes", rs.len(), probes.len()),
    ))
}

fn commutation(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.circle.k_max;
    let rs = scales(cfg)?;
    let mut worst = 0.0f64;
    for (i, r) in rs.iter().enumerate() {
        let degree = (k / (r.p() * r.q()) as usize).max(1);
        for f in trig_probes(cfg, k, degree, cfg.count("circle"), 14 + i as u64)? {
            let lhs = circular_hilbert(&semigroup_act(&f, r));
            let rhs = semigroup_act(&circular_hilbert(&f), r);
            worst = worst.max(max_coeff(&lhs.sub(&rhs)?));
        }
    }
    Ok(Measured::new(worst))
}

fn mean_invariance(cfg: &SuiteConfig) -> Outcome {
    let probes = full_probes(cfg, 15)?;
    let rs = scales(cfg)?;
    max_of(rs.iter().flat_map(|r| {
        probes.iter().map(move |f| {
            let m = mean_functional(&semigroup_act(f, r));
            Ok((m - mean_functional(f) * r.weight()).norm())
        })
    }))
    .map(Measured::new)
}

fn composition(cfg: &SuiteConfig) -> Outcome {
    let probes = full_probes(cfg, 16)?;
    let rs = scales(cfg)?;
    max_of(rs.iter().flat_map(|r| {
        probes.iter().map(move |f| {
            let direct = semigroup_act(f, r);
            let inner = semigroup_act(f, &RationalScale::new(1, r.p(), r.beta())?);
            let two_step = semigroup_act(&inner, &RationalScale::new(r.q(), 1, 0.0)?);
            if two_step.k_max() != direct.k_max() {
                return Err(Error::Internal("factored semigroup changed the output degree".into()));
            }
            Ok(max_coeff(&direct.sub(&two_step)?))
        })
    }))
    .map(Measured::new)
}

fn invariance(cfg: &SuiteConfig) -> Outcome {
    let probes = full_probes(cfg, 17)?;
    let rs = scales(cfg)?;
    max_of(rs.iter().flat_map(|r| {
        probes.iter().flat_map(move |f| {
            [PlemeljPart::PlusTilde, PlemeljPart::Minus].map(|part| {
                let img = semigroup_act(&plemelj_project(f, part), r);
                Ok(max_coeff(&img.sub(&plemelj_project(&img, part))?))
            })
        })
    }))
    .map(Measured::new)
}

fn quadrature(cfg: &SuiteConfig) -> Outcome {
    let n = cfg.circle.n_samples;
    let degree = (n / 8).max(1);
    let probes = trig_probes(cfg, degree, degree, cfg.count("circle"), 18)?;
    max_of(probes.iter().map(|f| {
        let quad = circular_hilbert_quadrature(&f.to_samples(n)?)?;
        let exact = circular_hilbert(f).to_samples(n)?;
        Ok(quad.sub(&exact)?.norm() / f.norm())
    }))
    .map(Measured::new)
}

fn moebius_elements(cfg: &SuiteConfig) -> Result<Vec<MoebiusElement>, Error> {
    cfg.moebius_set
        .iter()
        .map(|&(t, a)| MoebiusElement::new(t, a))
        .collect()
}

fn moebius_probes(cfg: &SuiteConfig) -> Result<Vec<CircleSamples>, Error> {
    let n = cfg.circle.n_samples;
    let degree = (n / 32).max(1);
    trig_probes(cfg, degree, degree, cfg.count("moebius"), 19)?
        .iter()
        .map(|f| f.to_samples(n))
        .collect()
}

fn moebius_norm_drift(cfg: &SuiteConfig, weight: MoebiusWeight) -> Outcome {
    let probes = moebius_probes(cfg)?;
    let els = moebius_elements(cfg)?;
    max_of(probes.iter().flat_map(|s| {
        els.iter()
            .map(move |m| Ok((moebius_act(s, m, weight)?.norm() / s.norm() - 1.0).abs()))
    }))
    .map(Measured::new)
}

fn cauchy_on_samples(s: &CircleSamples) -> Result<CircleSamples, Error> {
    cauchy_pv(&s.to_signal(s.max_degree())?).to_samples(s.n())
}

fn moebius_commutator(cfg: &SuiteConfig, weight: MoebiusWeight) -> Outcome {
    let probes = moebius_probes(cfg)?;
    let els = moebius_elements(cfg)?;
    let mut per_element = Vec::new();
    let mut worst = 0.0f64;
    for m in &els {
        let d = max_of(probes.iter().map(|s| {
            let lhs = cauchy_on_samples(&moebius_act(s, m, weight)?)?;
            let rhs = moebius_act(&cauchy_on_samples(s)?, m, weight)?;
            Ok(lhs.sub(&rhs)?.norm() / s.norm())
        }))?;
        per_element.push(format!("(theta={}, a={}): {d:.3e}", m.theta(), m.a()));
        worst = worst.max(d);
    }
    Ok(Measured::with(worst, per_element.join("; ")))
}

pub(super) fn run(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    vec![
        A02.record(cfg, involution(cfg)),
        A04.record(cfg, plemelj(cfg)),
        A05.record(cfg, closed_form_vs_average(cfg)),
        A06.record(cfg, commutation(cfg)),
        A11_UNITARY.record(cfg, moebius_norm_drift(cfg, MoebiusWeight::Jacobian)),
        A11_SZEGO_NORM.record(cfg, moebius_norm_drift(cfg, MoebiusWeight::SzegoKernel)),
        A11_COMM_JAC.record(cfg, moebius_commutator(cfg, MoebiusWeight::Jacobian)),
        A11_COMM_SZEGO.record(cfg, moebius_commutator(cfg, MoebiusWeight::SzegoKernel)),
        MEAN.record(cfg, mean_invariance(cfg)),
        COMPOSITION.record(cfg, composition(cfg)),
        INVARIANCE.record(cfg, invariance(cfg)),
        QUADRATURE.record(cfg, quadrature(cfg)),
    ]
}
