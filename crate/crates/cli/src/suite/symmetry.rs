use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hilbert_core::circle::{annihilator_witness, Annihilation, RationalScale, SignalFamily, ZERO_SET_EPS};
use hilbert_core::line::AffineElement;
use hilbert_core::signal::probes::{GaussianPacketParams, TrigPolyParams};
use hilbert_core::symmetry::{
    cauchy_pv_matrix, cauchy_symbol_matrix, classify_pm_hilbert, commutator_defect, decompose_circle_operator,
    decompose_line_operator, hardy_plus_matrix, hilbert_matrix, position_matrix, rotation_commutant_analysis,
    synthesize_commuting_operator, Action, Basis, Classification, OperatorMatrix,
};
use hilbert_core::{make_probes, CircleSignal, Complex64, Error, Grid1D, ProbeKind};

use super::{max_of, seed, Check, Measured, Outcome};
use crate::config::SuiteConfig;
use crate::report::CheckRecord;

const A07_ROUNDTRIP: Check = Check::at_most("A07-roundtrip", "lambda I + eta H is recovered from its matrix");
const A07_CLASSIFY: Check = Check::count("A07-classify", "+-H are the only real skew isometries of that form");
const A08: Check = Check::at_most("A08", "three-scalar decomposition on the circle");
const A09_CERTIFY: Check = Check::at_most("A09-certify", "polynomials in H~ pass the rotation/orbit test");
const A09_FLAG: Check = Check::at_least("A09-flag", "orbit-breaking diagonals are flagged");
const A10_ZERO: Check = Check::count("A10-zero", "empty zero set: only phi = 0 is annihilated");
const A10_WITNESS: Check = Check::count("A10-witness", "empty zero set: a nonzero phi gets a valid witness");
const LINE_COMMUTATOR: Check = Check::at_most("S-line-commutator", "H matrix commutes with the affine actions");
const CIRCLE_COMMUTATOR: Check = Check::at_most("S-circle-commutator", "H~ matrix commutes with the semigroup");
const SOUNDNESS: Check = Check::at_most(
    "S-soundness",
    "decomposition residuals measure the distance to the commutant",
);
const POSITION: Check = Check::at_least("S-position", "multiplication by x is caught by the translation test");

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed(cfg, salt))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn decomposition_grid(cfg: &SuiteConfig) -> Result<Grid1D, Error> {
    let l = &cfg.symmetry.line;
    Grid1D::over(l.x_min, l.x_max, cfg.symmetry.decomposition_n)
}

fn scales(cfg: &SuiteConfig) -> Result<Vec<RationalScale>, Error> {
    cfg.rational_set
        .iter()
        .map(|&(q, p, b)| RationalScale::new(q, p, b))
        .collect()
}

fn roundtrip(cfg: &SuiteConfig) -> Outcome {
    let basis = Basis::Line {
        grid: decomposition_grid(cfg)?,
    };
    let mut r = rng(cfg, 31);
    let trials = cfg.count("decomposition");
    let worst = max_of((0..trials).map(|_| {
        let lambda = random_complex(&mut r);
        let eta = random_complex(&mut r);
        let d = decompose_line_operator(&synthesize_commuting_operator(lambda, eta, basis))?;
        Ok([(d.lambda - lambda).norm(), (d.eta - eta).norm(), d.max_residual()]
            .into_iter()
            .fold(0.0, f64::max))
    }))?;
    Ok(Measured::with(
        worst,
        format!("{trials} draws on {} samples", basis.dim()),
    ))
}

fn classification(cfg: &SuiteConfig) -> Outcome {
    let grid = decomposition_grid(cfg)?;
    let mut cases: Vec<(String, OperatorMatrix, Option<Classification>)> = Vec::new();
    for (name, basis) in [
        ("line", Basis::Line { grid }),
        (
            "fourier",
            Basis::Fourier {
                k_max: cfg.symmetry.k_max,
            },
        ),
    ] {
        let h = hilbert_matrix(basis);
        cases.push((format!("{name} H"), h.clone(), Some(Classification::PlusH)));
        cases.push((
            format!("{name} -H"),
            h.scale(c(-1.0, 0.0)),
            Some(Classification::MinusH),
        ));
        cases.push((format!("{name} I"), OperatorMatrix::identity(basis), None));
        cases.push((format!("{name} P+"), hardy_plus_matrix(basis), None));
    }
    cases.push(("line x".into(), position_matrix(grid), None));
    let mut wrong = Vec::new();
    for (name, t, expected) in &cases {
        let got = classify_pm_hilbert(t)?;
        let ok = match expected {
            Some(e) => got == *e,
            None => matches!(got, Classification::Neither(_)),
        };
        if !ok {
            wrong.push(format!("{name}: {got:?}"));
        }
    }
    let detail = if wrong.is_empty() {
        format!("{} operators classified", cases.len())
    } else {
        wrong.join("; ")
    };
    Ok(Measured::with(wrong.len() as f64, detail))
}

fn three_scalars(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.symmetry.k_max;
    let expected = [
        (
            hilbert_matrix(Basis::Fourier { k_max: k }),
            [c(0.0, -1.0), c(0.0, 0.0), c(0.0, 1.0)],
        ),
        (cauchy_symbol_matrix(k), [c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]),
    ];
    let worst = max_of(expected.iter().map(|(t, want)| {
        let d = decompose_circle_operator(t)?;
        let got = [d.lambda, d.eta, d.omega.unwrap_or(c(f64::NAN, 0.0))];
        let off = got.iter().zip(want).map(|(g, w)| (g - w).norm()).fold(0.0, f64::max);
        Ok(off.max(d.max_residual()))
    }))?;
    let pv = decompose_circle_operator(&cauchy_pv_matrix(k))?;
    let omega = pv.omega.unwrap_or(c(f64::NAN, 0.0));
    Ok(Measured::with(
        worst,
        format!("cauchy_pv scalars ({}, {}, {})", pv.lambda, pv.eta, omega),
    ))
}

fn random_polynomial_in_h(k: usize, r: &mut ChaCha8Rng) -> Result<OperatorMatrix, Error> {
    let basis = Basis::Fourier { k_max: k };
    let h = hilbert_matrix(basis);
    let mut power = OperatorMatrix::identity(basis);
    let mut t = OperatorMatrix::zeros(basis);
    for _ in 0..4 {
        t = t.add(&power.scale(random_complex(r)))?;
        power = power.matmul(&h)?;
    }
    Ok(t)
}

fn certify(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.symmetry.k_max;
    let rs = scales(cfg)?;
    let mut r = rng(cfg, 32);
    max_of((0..cfg.count("orbit")).map(|_| {
        let rep = rotation_commutant_analysis(&random_polynomial_in_h(k, &mut r)?, &rs)?;
        Ok(rep.diagonal_defect.max(rep.rotation_defect).max(rep.orbit_spread))
    }))
    .map(Measured::new)
}

fn flag(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.symmetry.k_max;
    let rs = scales(cfg)?;
    let mut r = rng(cfg, 33);
    let trials = cfg.count("orbit");
    let mut weakest = f64::INFINITY;
    for _ in 0..trials {
        let base = random_polynomial_in_h(k, &mut r)?;
        // a perturbed index with room for its doubled partner
        let at = r.random_range(1..=(k / 2).max(1)) as i64;
        let size = r.random_range(0.6..1.5);
        let phase = r.random_range(0.0..std::f64::consts::TAU);
        let bump = OperatorMatrix::diagonal(*base.basis(), |i| {
            if i as i64 - k as i64 == at {
                Complex64::from_polar(size, phase)
            } else {
                c(0.0, 0.0)
            }
        });
        let rep = rotation_commutant_analysis(&base.add(&bump)?, &rs)?;
        weakest = weakest.min(rep.orbit_spread);
    }
    Ok(Measured::with(
        weakest,
        format!("smallest spread over {trials} perturbations"),
    ))
}

/// Random members with scattered zeros whose common zero set is empty.
fn random_family(k: usize, r: &mut ChaCha8Rng) -> Result<SignalFamily, Error> {
    let count = r.random_range(2..5usize);
    let mut members = Vec::with_capacity(count);
    for _ in 0..count {
        let coeffs = (0..2 * k + 1)
            .map(|_| {
                if r.random_bool(0.4) {
                    c(0.0, 0.0)
                } else {
                    random_complex(r)
                }
            })
            .collect();
        members.push(CircleSignal::new(k, coeffs)?);
    }
    for i in -(k as i64)..=(k as i64) {
        if members.iter().all(|m| m.coeff(i).norm() == 0.0) {
            let who = r.random_range(0..count);
            members[who].set(i, random_complex(r))?;
        }
    }
    SignalFamily::new(members)
}

fn zero_case(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.circle.k_max;
    let mut r = rng(cfg, 34);
    let mut wrong = 0usize;
    for _ in 0..cfg.count("families") {
        let fam = random_family(k, &mut r)?;
        if annihilator_witness(&fam, &CircleSignal::zeros(k))? != Annihilation::Zero {
            wrong += 1;
        }
    }
    Ok(Measured::new(wrong as f64))
}

fn witness_case(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.circle.k_max as i64;
    let mut r = rng(cfg, 35);
    let mut wrong = 0usize;
    for _ in 0..cfg.count("families") {
        let fam = random_family(k as usize, &mut r)?;
        // phi lives on a strict sub-spectrum; some members vanish on part of it
        let lo = r.random_range(1 - k..k);
        let hi = r.random_range(lo..=k);
        let coeffs = (-k..=k)
            .map(|i| {
                if (lo..=hi).contains(&i) {
                    random_complex(&mut r)
                } else {
                    c(0.0, 0.0)
                }
            })
            .collect();
        let phi = CircleSignal::new(k as usize, coeffs)?;
        let cutoff = ZERO_SET_EPS * phi.max_abs();
        let valid = match annihilator_witness(&fam, &phi)? {
            Annihilation::Witness { index, member } => fam
                .members()
                .get(member)
                .is_some_and(|f| (f.coeff(index) * phi.coeff(index)).norm() > cutoff * f.max_abs()),
            Annihilation::Zero => false,
        };
        wrong += usize::from(!valid);
    }
    Ok(Measured::new(wrong as f64))
}

fn line_commutator(cfg: &SuiteConfig) -> Outcome {
    let grid = cfg.symmetry.line.grid()?;
    // offsets are set in steps of the main grid; keep them on this grid's lattice
    let ratio = cfg.symmetry.line.dx() / cfg.line.dx();
    let actions: Vec<Action> = cfg
        .affine_set
        .iter()
        .map(|&(a, b)| AffineElement::new(a, b * ratio).map(Action::Affine))
        .collect::<Result<_, _>>()?;
    let a_min = cfg.affine_set.iter().map(|g| g.0).fold(1.0, f64::min);
    let a_max = cfg.affine_set.iter().map(|g| g.0).fold(1.0, f64::max);
    let params = GaussianPacketParams::guarded(grid, a_min, a_max)?;
    let probes = make_probes(&ProbeKind::GaussianPacket(params), cfg.count("symmetry"), seed(cfg, 36))?;
    let rep = commutator_defect(&hilbert_matrix(Basis::Line { grid }), &actions, &probes)?;
    Ok(Measured::with(
        rep.max_defect,
        format!("{} pairs on {} samples", rep.records.len(), grid.n()),
    ))
}

fn circle_commutator(cfg: &SuiteConfig) -> Outcome {
    let k = cfg.symmetry.k_max;
    let rs = scales(cfg)?;
    // low enough degree that every scale keeps its image inside K
    let q_max = rs.iter().map(|r| r.q()).max().unwrap_or(1) as usize;
    let kind = ProbeKind::TrigPoly(TrigPolyParams {
        k_max: k,
        degree: (k / q_max).max(1),
    });
    let probes = make_probes(&kind, cfg.count("symmetry"), seed(cfg, 37))?;
    let actions: Vec<Action> = rs.into_iter().map(Action::Semigroup).collect();
    let rep = commutator_defect(&hilbert_matrix(Basis::Fourier { k_max: k }), &actions, &probes)?;
    Ok(Measured::new(rep.max_defect))
}

/// `||T - (lambda I + eta H)||_F` against `||T||_F * |residuals|`.
fn soundness(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, 38);
    let grid = Grid1D::over(cfg.symmetry.line.x_min, cfg.symmetry.line.x_max, 64)?;
    let bases = [Basis::Line { grid }, Basis::Fourier { k_max: 16 }];
    let mut worst = 0.0f64;
    for basis in bases {
        for trial in 0..cfg.count("symmetry") {
            let noise = 10f64.powi(-(trial as i32 % 6));
            let base = synthesize_commuting_operator(random_complex(&mut r), random_complex(&mut r), basis);
            let pert: Vec<Complex64> = (0..basis.dim() * basis.dim())
                .map(|_| random_complex(&mut r) * noise)
                .collect();
            let t = base.add(&OperatorMatrix::new(basis, pert)?)?;
            let d = decompose_line_operator(&t)?;
            let distance = t
                .sub(&synthesize_commuting_operator(d.lambda, d.eta, basis))?
                .frobenius();
            let z = d.residual_zero.unwrap_or(0.0);
            let predicted = t.frobenius() * (d.residual_plus.powi(2) + d.residual_minus.powi(2) + z * z).sqrt();
            worst = worst.max((distance - predicted).abs() / t.frobenius());
        }
    }
    Ok(Measured::new(worst))
}

fn position(cfg: &SuiteConfig) -> Outcome {
    let grid = cfg.symmetry.line.grid()?;
    let shift = AffineElement::new(1.0, 7.0 * grid.dx())?;
    let params = GaussianPacketParams::guarded(grid, 1.0, 1.0)?;
    let probes = make_probes(&ProbeKind::GaussianPacket(params), cfg.count("symmetry"), seed(cfg, 39))?;
    let rep = commutator_defect(&position_matrix(grid), &[Action::Affine(shift)], &probes)?;
    let smallest = rep.records.iter().map(|d| d.defect).fold(f64::INFINITY, f64::min);
    Ok(Measured::with(smallest, "smallest defect over probes"))
}

pub(super) fn run(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    vec![
        A07_ROUNDTRIP.record(cfg, roundtrip(cfg)),
        A07_CLASSIFY.record(cfg, classification(cfg)),
        A08.record(cfg, three_scalars(cfg)),
        A09_CERTIFY.record(cfg, certify(cfg)),
        A09_FLAG.record(cfg, flag(cfg)),
        A10_ZERO.record(cfg, zero_case(cfg)),
        A10_WITNESS.record(cfg, witness_case(cfg)),
        LINE_COMMUTATOR.record(cfg, line_commutator(cfg)),
        CIRCLE_COMMUTATOR.record(cfg, circle_commutator(cfg)),
        SOUNDNESS.record(cfg, soundness(cfg)),
        POSITION.record(cfg, position(cfg)),
    ]
}
