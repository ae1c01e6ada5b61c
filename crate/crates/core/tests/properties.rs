//! Cross-module properties through the public API.

use hilbert_core::circle::{circular_hilbert, semigroup_act, RationalScale};
use hilbert_core::line::{hilbert_kernel_part, hilbert_multiplier, rep_natural, AffineElement};
use hilbert_core::signal::probes::{GaussianPacketParams, TrigPolyParams};
use hilbert_core::symmetry::{commutator_defect, decompose_circle_operator, hilbert_matrix, Action, Basis};
use hilbert_core::{
    inner_product, make_probes, CircleSignal, Complex64, Grid1D, InnerProductSpace, LineSignal, ProbeKind, SignalFile,
};
use proptest::prelude::*;

fn coeffs(k: usize) -> impl Strategy<Value = CircleSignal> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2 * k + 1).prop_map(move |v| {
        CircleSignal::new(k, v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap()
    })
}

fn samples(n: usize) -> impl Strategy<Value = LineSignal> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n).prop_map(move |v| {
        let grid = Grid1D::over(-8.0, 8.0, n).unwrap();
        LineSignal::new(grid, v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn line_hilbert_is_skew_and_isometric_off_the_kernel(f in samples(64), g in samples(64)) {
        let f = f.sub(&hilbert_kernel_part(&f)).unwrap();
        let hf = hilbert_multiplier(&f);
        prop_assert!((hf.norm() - f.norm()).abs() <= 1e-12 * f.norm().max(1.0));
        let lhs = inner_product(&hf, &g).unwrap();
        let rhs = inner_product(&f, &hilbert_multiplier(&g)).unwrap();
        prop_assert!((lhs + rhs).norm() <= 1e-12 * (f.norm() * g.norm()).max(1.0));
    }

    #[test]
    fn circle_files_round_trip_exactly(c in coeffs(6)) {
        let file = SignalFile::CircleCoeffs(c);
        prop_assert_eq!(SignalFile::from_json(&file.to_json()).unwrap(), file);
    }

    #[test]
    fn semigroup_preserves_norm_up_to_its_weight(c in coeffs(12), q in 1u32..5, p in 1u32..5, beta in 0.0..6.3f64) {
        prop_assume!(num_gcd(q, p) == 1);
        let r = RationalScale::new(q, p, beta).unwrap();
        let out = semigroup_act(&c, &r);
        // coefficients on multiples of p survive, each scaled by sqrt(p/q)
        let kept: f64 = c.iter().filter(|(k, _)| k % p as i64 == 0).map(|(_, v)| v.norm_sqr()).sum();
        prop_assert!((out.norm() - r.weight() * kept.sqrt()).abs() <= 1e-12);
        let lhs = circular_hilbert(&out);
        let rhs = semigroup_act(&circular_hilbert(&c), &r);
        prop_assert_eq!(lhs, rhs);
    }
}

fn num_gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn matrix_and_matrix_free_commutators_agree() {
    let grid = Grid1D::over(-40.0, 40.0, 1024).unwrap();
    let params = GaussianPacketParams::guarded(grid, 0.5, 2.0).unwrap();
    let probes = make_probes(&ProbeKind::GaussianPacket(params), 3, 5).unwrap();
    let g = AffineElement::new(2.0, 3.0 * grid.dx()).unwrap();
    let rep = commutator_defect(&hilbert_matrix(Basis::Line { grid }), &[Action::Affine(g)], &probes).unwrap();
    for f in probes.into_line().unwrap() {
        let lhs = hilbert_multiplier(&rep_natural(&f, &g).unwrap().value);
        let rhs = rep_natural(&hilbert_multiplier(&f), &g).unwrap().value;
        assert!(lhs.sub(&rhs).unwrap().norm() / f.norm() <= 1e-9);
    }
    assert!(rep.max_defect <= 1e-9, "{}", rep.max_defect);
}

#[test]
fn circle_hilbert_matrix_decomposes_on_trig_probes() {
    let d = decompose_circle_operator(&hilbert_matrix(Basis::Fourier { k_max: 16 })).unwrap();
    assert_eq!(d.lambda, Complex64::new(0.0, -1.0));
    assert_eq!(d.omega, Some(Complex64::new(0.0, 1.0)));
    let kind = ProbeKind::TrigPoly(TrigPolyParams { k_max: 16, degree: 4 });
    let probes = make_probes(&kind, 4, 9).unwrap();
    let actions: Vec<Action> = [(2, 1), (1, 3), (3, 2)]
        .into_iter()
        .map(|(q, p)| Action::Semigroup(RationalScale::new(q, p, 0.7).unwrap()))
        .collect();
    let rep = commutator_defect(&hilbert_matrix(Basis::Fourier { k_max: 16 }), &actions, &probes).unwrap();
    assert_eq!(rep.max_defect, 0.0);
}
