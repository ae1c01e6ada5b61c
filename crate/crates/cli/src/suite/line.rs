use hilbert_core::line::{
    dilate, hardy_project, hilbert_kernel_part, hilbert_multiplier, hilbert_pv_quadrature, intertwine_defect,
    rep_natural, translate, AffineElement, HardySign,
};
use hilbert_core::signal::probes::GaussianPacketParams;
use hilbert_core::{make_probes, Complex64, Error, InnerProductSpace, LineSignal, ProbeKind};

use super::{max_of, seed, Check, Measured, Outcome};
use crate::config::SuiteConfig;
use crate::report::CheckRecord;

const A01: Check = Check::at_most("A01", "Hilbert multiplier vs principal-value integral");
const A02: Check = Check::at_most("A02-line", "H^2 = -I off the DC/Nyquist bins");
const A03: Check = Check::at_most("A03", "H commutes with dilations and translations");
const HARDY: Check = Check::at_most("L-hardy", "P+ + P- = I and P+ - P- = iH");
const INTERTWINE: Check = Check::at_most("L-intertwine", "Fourier transform intertwines the affine actions");
const ISOMETRY: Check = Check::at_most("L-isometry", "affine action is isometric");
const HOMOMORPHISM: Check = Check::at_most("L-homomorphism", "affine action respects the group law");

fn elements(cfg: &SuiteConfig) -> Result<Vec<AffineElement>, Error> {
    cfg.affine_set.iter().map(|&(a, b)| AffineElement::new(a, b)).collect()
}

fn guarded_probes(cfg: &SuiteConfig, salt: u64) -> Result<Vec<LineSignal>, Error> {
    let grid = cfg.line.grid()?;
    let els = elements(cfg)?;
    let a_min = els.iter().map(|g| g.a()).fold(1.0, f64::min);
    let a_max = els.iter().map(|g| g.a()).fold(1.0, f64::max);
    let params = GaussianPacketParams::guarded(grid, a_min, a_max)?;
    make_probes(&ProbeKind::GaussianPacket(params), cfg.count("line"), seed(cfg, salt))?.into_line()
}

fn rel(a: &LineSignal, b: &LineSignal, scale: f64) -> Result<f64, Error> {
    Ok(a.sub(b)?.norm() / scale)
}

fn quadrature_agreement(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 1)?;
    let mut flagged = 0;
    let worst = max_of(probes.iter().map(|f| {
        let pv = hilbert_pv_quadrature(f);
        flagged += usize::from(!pv.warnings.is_empty());
        let reference = hilbert_multiplier(f);
        Ok(pv.value.sub(&reference)?.central_half_norm() / reference.central_half_norm())
    }))?;
    Ok(Measured::with(
        worst,
        format!("{} probes, {flagged} with edge-decay warnings", probes.len()),
    ))
}

fn involution(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 2)?;
    max_of(probes.iter().map(|f| {
        let f = f.sub(&hilbert_kernel_part(f))?;
        let hh = hilbert_multiplier(&hilbert_multiplier(&f));
        rel(&hh, &f.scale(Complex64::new(-1.0, 0.0)), f.norm())
    }))
    .map(Measured::new)
}

fn commutation(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 3)?;
    let els = elements(cfg)?;
    let worst = max_of(probes.iter().flat_map(|f| {
        let hf = hilbert_multiplier(f);
        els.iter().map(move |g| {
            let lhs = hilbert_multiplier(&rep_natural(f, g)?.value);
            let rhs = rep_natural(&hf, g)?.value;
            rel(&lhs, &rhs, f.norm())
        })
    }))?;
    Ok(Measured::with(
        worst,
        format!("{} elements x {} probes", els.len(), probes.len()),
    ))
}

fn hardy_split(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 4)?;
    max_of(probes.iter().map(|f| {
        let plus = hardy_project(f, HardySign::Plus);
        let minus = hardy_project(f, HardySign::Minus);
        let sum = rel(&plus.add(&minus)?, f, f.norm())?;
        let ih = hilbert_multiplier(f).scale(Complex64::new(0.0, 1.0));
        let diff = rel(&plus.sub(&minus)?, &ih, f.norm())?;
        Ok(sum.max(diff))
    }))
    .map(Measured::new)
}

fn intertwining(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 5)?;
    let els = elements(cfg)?;
    max_of(
        probes
            .iter()
            .flat_map(|f| els.iter().map(move |g| intertwine_defect(f, g))),
    )
    .map(Measured::new)
}

fn isometry(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 6)?;
    let els = elements(cfg)?;
    max_of(probes.iter().flat_map(|f| {
        els.iter().map(move |g| {
            let out = rep_natural(f, g)?.value;
            let d = dilate(f, g.a())?;
            let t = translate(f, g.b())?.value;
            let n = f.norm();
            Ok([out.norm(), d.norm(), t.norm()]
                .iter()
                .map(|m| (m - n).abs() / n)
                .fold(0.0, f64::max))
        })
    }))
    .map(Measured::new)
}

fn homomorphism(cfg: &SuiteConfig) -> Outcome {
    let probes = guarded_probes(cfg, 7)?;
    let dx = cfg.line.dx();
    // products stay inside the dilation range the probes are guarded for
    let pairs = [
        (AffineElement::new(2.0, 7.0 * dx)?, AffineElement::new(0.5, 3.5 * dx)?),
        (AffineElement::new(0.5, -7.0 * dx)?, AffineElement::new(4.0, 0.0)?),
        (AffineElement::new(2.0, 1.0)?, AffineElement::new(1.5, -0.5)?),
    ];
    max_of(probes.iter().flat_map(|f| {
        pairs.iter().map(move |(g, h)| {
            let lhs = rep_natural(&rep_natural(f, h)?.value, g)?.value;
            let rhs = rep_natural(f, &g.compose(h))?.value;
            rel(&lhs, &rhs, f.norm())
        })
    }))
    .map(Measured::new)
}

pub(super) fn run(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    vec![
        A01.record(cfg, quadrature_agreement(cfg)),
        A02.record(cfg, involution(cfg)),
        A03.record(cfg, commutation(cfg)),
        HARDY.record(cfg, hardy_split(cfg)),
        INTERTWINE.record(cfg, intertwining(cfg)),
        ISOMETRY.record(cfg, isometry(cfg)),
        HOMOMORPHISM.record(cfg, homomorphism(cfg)),
    ]
}
