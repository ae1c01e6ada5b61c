//! Block-scalar extraction and the `+-H` classifier.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{hilbert_matrix, Basis, OperatorMatrix};
use crate::error::{Error, Result};
use crate::signal::fourier::fft_forward;
use crate::signal::ZERO;

/// Block scalars of an operator and the residuals left after removing them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarDecomposition {
    pub k1: Complex64,
    pub k2: Complex64,
    pub k0: Option<Complex64>,
    pub lambda: Complex64,
    pub eta: Complex64,
    pub omega: Option<Complex64>,
    pub residual_plus: f64,
    pub residual_minus: f64,
    pub residual_zero: Option<f64>,
}

impl ScalarDecomposition {
    pub fn max_residual(&self) -> f64 {
        self.residual_plus
            .max(self.residual_minus)
            .max(self.residual_zero.unwrap_or(0.0))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Residuals {
            plus: f64,
            minus: f64,
            zero: Option<f64>,
        }
        #[derive(Serialize)]
        struct Out {
            k1: [f64; 2],
            k2: [f64; 2],
            k0: Option<[f64; 2]>,
            lambda: [f64; 2],
            eta: [f64; 2],
            omega: Option<[f64; 2]>,
            residuals: Residuals,
        }
        let pair = |z: Complex64| [z.re, z.im];
        let out = Out {
            k1: pair(self.k1),
            k2: pair(self.k2),
            k0: self.k0.map(pair),
            lambda: pair(self.lambda),
            eta: pair(self.eta),
            omega: self.omega.map(pair),
            residuals: Residuals {
                plus: self.residual_plus,
                minus: self.residual_minus,
                zero: self.residual_zero,
            },
        };
        serde_json::to_string_pretty(&out).expect("serializable")
    }
}

/// `U T U^H` with the unitary DFT `U`, row and column indices in bin order.
fn to_fourier_side(t: &OperatorMatrix) -> Vec<Complex64> {
    let n = t.dim();
    let scale = 1.0 / n as f64;
    // columns of U T
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| t.get(i, j)).collect()).collect();
    cols.iter_mut().for_each(|c| fft_forward(c));
    // (U T) U^H = (U (U T)^H)^H
    let mut rows: Vec<Vec<Complex64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].conj()).collect()).collect();
    rows.iter_mut().for_each(|r| fft_forward(r));
    let mut out = vec![ZERO; n * n];
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[i * n + j] = v.conj() * scale;
        }
    }
    out
}

struct Blocks {
    n: usize,
    entries: Vec<Complex64>,
    total: f64,
}

impl Blocks {
    fn of(t: &OperatorMatrix) -> Self {
        let entries = match t.basis() {
            Basis::Line { .. } => to_fourier_side(t),
            Basis::Fourier { .. } => t.entries().to_vec(),
        };
        Blocks {
            n: t.dim(),
            entries,
            total: t.frobenius(),
        }
    }

    fn mean_diagonal(&self, idx: &[usize]) -> Complex64 {
        idx.iter().map(|&i| self.entries[i * self.n + i]).sum::<Complex64>() / idx.len() as f64
    }

    /// `||(T - k) Q||_F / ||T||_F` for the coordinate projection `Q` onto `idx`.
    fn residual(&self, idx: &[usize], k: Complex64) -> f64 {
        if self.total == 0.0 {
            return 0.0;
        }
        let mut sum = 0.0;
        for &j in idx {
            for i in 0..self.n {
                let mut v = self.entries[i * self.n + j];
                if i == j {
                    v -= k;
                }
                sum += v.norm_sqr();
            }
        }
        sum.sqrt() / self.total
    }
}

fn partition(basis: &Basis, dim: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let (mut plus, mut minus, mut edge) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..dim {
        let k = basis.frequency_index(i);
        if k == 0 || basis.is_nyquist(i) {
            edge.push(i);
        } else if k > 0 {
            plus.push(i);
        } else {
            minus.push(i);
        }
    }
    (plus, minus, edge)
}

/// Best scalars `k1` on the positive-frequency block and `k2` on the negative
/// one, with `lambda = (k1 + k2)/2` and `eta = (k2 - k1)/(2i)` so that
/// `lambda I + eta H` is the nearest operator of that form.
///
/// The DC (and Nyquist) columns are scored against `lambda`, since `H`
/// vanishes there; `residual_zero` reports them.
pub fn decompose_line_operator(t: &OperatorMatrix) -> Result<ScalarDecomposition> {
    let (plus, minus, edge) = partition(t.basis(), t.dim());
    if plus.is_empty() || minus.is_empty() {
        return Err(Error::Precondition(
            "basis has an empty positive or negative frequency block".into(),
        ));
    }
    let blocks = Blocks::of(t);
    let k1 = blocks.mean_diagonal(&plus);
    let k2 = blocks.mean_diagonal(&minus);
    let lambda = (k1 + k2) / 2.0;
    let eta = (k2 - k1) / Complex64::new(0.0, 2.0);
    Ok(ScalarDecomposition {
        k1,
        k2,
        k0: None,
        lambda,
        eta,
        omega: None,
        residual_plus: blocks.residual(&plus, k1),
        residual_minus: blocks.residual(&minus, k2),
        residual_zero: Some(blocks.residual(&edge, lambda)),
    })
}

/// Best scalars on the `k >= 1`, `k = 0` and `k <= -1` blocks, reported in
/// that order as `(lambda, eta, omega)`.
pub fn decompose_circle_operator(t: &OperatorMatrix) -> Result<ScalarDecomposition> {
    let k_max = match t.basis() {
        Basis::Fourier { k_max } => *k_max,
        Basis::Line { .. } => {
            return Err(Error::BasisMismatch(
                "circle decomposition needs a fourier basis".into(),
            ))
        }
    };
    if k_max == 0 {
        return Err(Error::Precondition("circle decomposition needs K >= 1".into()));
    }
    let (plus, minus, zero) = partition(t.basis(), t.dim());
    let blocks = Blocks::of(t);
    let k1 = blocks.mean_diagonal(&plus);
    let k0 = blocks.mean_diagonal(&zero);
    let k2 = blocks.mean_diagonal(&minus);
    Ok(ScalarDecomposition {
        k1,
        k2,
        k0: Some(k0),
        lambda: k1,
        eta: k0,
        omega: Some(k2),
        residual_plus: blocks.residual(&plus, k1),
        residual_minus: blocks.residual(&minus, k2),
        residual_zero: Some(blocks.residual(&zero, k0)),
    })
}

/// `lambda I + eta H` on `basis`.
pub fn synthesize_commuting_operator(lambda: Complex64, eta: Complex64, basis: Basis) -> OperatorMatrix {
    let h = hilbert_matrix(basis);
    let dim = basis.dim();
    OperatorMatrix::from_fn(basis, |i, j| {
        let diag = if i == j { lambda } else { ZERO };
        diag + eta * h.entries()[i * dim + j]
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    PlusH,
    MinusH,
    Neither(String),
}

/// Tolerance of every check in [`classify_pm_hilbert`], relative to `||T||_F`.
pub const CLASSIFY_TOL: f64 = 1e-8;

fn realness_defect(t: &OperatorMatrix) -> f64 {
    let n = t.dim();
    match t.basis() {
        Basis::Line { .. } => t.entries().iter().map(|v| v.im * v.im).sum::<f64>().sqrt(),
        // real signals pair c_{-k} with conj(c_k): index i <-> n - 1 - i
        Basis::Fourier { .. } => (0..n * n)
            .map(|e| {
                let (i, j) = (e / n, e % n);
                (t.get(i, j) - t.get(n - 1 - i, n - 1 - j).conj()).norm_sqr()
            })
            .sum::<f64>()
            .sqrt(),
    }
}

/// Decides between `H`, `-H` and neither by checking, in order, that `T`
/// preserves real signals, is skew-adjoint, is a partial isometry, and has
/// the `lambda I + eta H` form with `k1 = -+i`.
pub fn classify_pm_hilbert(t: &OperatorMatrix) -> Result<Classification> {
    let norm = t.frobenius();
    if norm == 0.0 {
        return Ok(Classification::Neither("zero operator".into()));
    }
    let tol = CLASSIFY_TOL * norm;
    let real = realness_defect(t);
    if real > tol {
        return Ok(Classification::Neither(format!(
            "real structure fails: defect {:.3e}",
            real / norm
        )));
    }
    let skew = t.add(&t.adjoint())?.frobenius();
    if skew > tol {
        return Ok(Classification::Neither(format!(
            "anti-symmetry fails: ||T + T*|| / ||T|| = {:.3e}",
            skew / norm
        )));
    }
    let gram = t.adjoint().matmul(t)?;
    let idem = gram.matmul(&gram)?.sub(&gram)?.frobenius();
    if idem > CLASSIFY_TOL * gram.frobenius() {
        return Ok(Classification::Neither(format!(
            "not norm-preserving off its kernel: ||G^2 - G|| / ||G|| = {:.3e}",
            idem / gram.frobenius()
        )));
    }
    let d = decompose_line_operator(t)?;
    if d.max_residual() > CLASSIFY_TOL {
        return Ok(Classification::Neither(format!(
            "not of the form lambda I + eta H: residual {:.3e}",
            d.max_residual()
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    if (d.k1 + i).norm() <= CLASSIFY_TOL && (d.k2 - i).norm() <= CLASSIFY_TOL {
        Ok(Classification::PlusH)
    } else if (d.k1 - i).norm() <= CLASSIFY_TOL && (d.k2 + i).norm() <= CLASSIFY_TOL {
        Ok(Classification::MinusH)
    } else {
        Ok(Classification::Neither(format!(
            "block scalars k1={}, k2={} are not -+i",
            d.k1, d.k2
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::Grid1D;
    use crate::symmetry::matrix::{cauchy_symbol_matrix, hardy_plus_matrix, position_matrix};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn line() -> Basis {
        Basis::Line {
            grid: Grid1D::over(-20.0, 20.0, 128).unwrap(),
        }
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn hilbert_identity_and_weighted_projections() {
        for basis in [line(), Basis::Fourier { k_max: 16 }] {
            let d = decompose_line_operator(&hilbert_matrix(basis)).unwrap();
            assert!(close(d.k1, c(0.0, -1.0), 1e-12) && close(d.k2, c(0.0, 1.0), 1e-12));
            assert!(close(d.lambda, ZERO, 1e-12) && close(d.eta, c(1.0, 0.0), 1e-12));
            assert!(d.max_residual() <= 1e-12);

            let d = decompose_line_operator(&OperatorMatrix::identity(basis)).unwrap();
            assert!(close(d.k1, c(1.0, 0.0), 1e-12) && close(d.k2, c(1.0, 0.0), 1e-12));
            assert!(close(d.lambda, c(1.0, 0.0), 1e-12) && close(d.eta, ZERO, 1e-12));

            let p = hardy_plus_matrix(basis);
            let i = OperatorMatrix::identity(basis);
            let t = p
                .scale(c(3.0, 0.0))
                .add(&i.sub(&p).unwrap().scale(c(5.0, 0.0)))
                .unwrap();
            let d = decompose_line_operator(&t).unwrap();
            assert!(close(d.k1, c(3.0, 0.0), 1e-12) && close(d.k2, c(5.0, 0.0), 1e-12));
            assert!(close(d.lambda, c(4.0, 0.0), 1e-12) && close(d.eta, c(0.0, -1.0), 1e-12));
            assert!(d.max_residual() <= 1e-12);
        }
    }

    #[test]
    fn index_shift_becomes_a_phase_on_the_fourier_side() {
        let n = 16;
        let basis = Basis::Line {
            grid: Grid1D::over(0.0, 1.0, n).unwrap(),
        };
        let shift = OperatorMatrix::from_fn(basis, |i, j| if i == (j + 1) % n { c(1.0, 0.0) } else { ZERO });
        let f = to_fourier_side(&shift);
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j {
                    Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * i as f64 / n as f64)
                } else {
                    ZERO
                };
                assert!(close(f[i * n + j], expected, 1e-14), "({i}, {j})");
            }
        }
    }

    #[test]
    fn circle_three_scalars() {
        let basis = Basis::Fourier { k_max: 8 };
        let d = decompose_circle_operator(&hilbert_matrix(basis)).unwrap();
        assert_eq!((d.lambda, d.eta, d.omega), (c(0.0, -1.0), ZERO, Some(c(0.0, 1.0))));
        assert!(d.max_residual() <= 1e-14);
        let d = decompose_circle_operator(&OperatorMatrix::identity(basis)).unwrap();
        assert_eq!(
            (d.lambda, d.eta, d.omega),
            (c(1.0, 0.0), c(1.0, 0.0), Some(c(1.0, 0.0)))
        );
        let d = decompose_circle_operator(&cauchy_symbol_matrix(8)).unwrap();
        assert_eq!(
            (d.lambda, d.eta, d.omega),
            (c(1.0, 0.0), c(1.0, 0.0), Some(c(-1.0, 0.0)))
        );
        assert!(decompose_circle_operator(&OperatorMatrix::identity(Basis::Fourier { k_max: 0 })).is_err());
        assert!(decompose_circle_operator(&OperatorMatrix::identity(line())).is_err());
    }

    #[test]
    fn residuals_account_for_the_whole_misfit() {
        let t = OperatorMatrix::from_fn(line(), |i, j| {
            c((i * 7 + j * 3) as f64 % 5.0, (i as f64 - j as f64) / 40.0)
        });
        let d = decompose_line_operator(&t).unwrap();
        let recon = synthesize_commuting_operator(d.lambda, d.eta, *t.basis());
        let misfit = t.sub(&recon).unwrap().frobenius();
        let claimed = t.frobenius()
            * (d.residual_plus.powi(2) + d.residual_minus.powi(2) + d.residual_zero.unwrap().powi(2)).sqrt();
        assert!((misfit - claimed).abs() <= 1e-10 * t.frobenius());
    }

    #[test]
    fn classifier_on_reference_operators() {
        for basis in [line(), Basis::Fourier { k_max: 16 }] {
            let h = hilbert_matrix(basis);
            assert_eq!(classify_pm_hilbert(&h).unwrap(), Classification::PlusH);
            assert_eq!(
                classify_pm_hilbert(&h.scale(c(-1.0, 0.0))).unwrap(),
                Classification::MinusH
            );
            let Classification::Neither(why) = classify_pm_hilbert(&OperatorMatrix::identity(basis)).unwrap() else {
                panic!("identity classified as a Hilbert transform")
            };
            assert!(why.starts_with("anti-symmetry"), "{why}");
            assert!(matches!(
                classify_pm_hilbert(&hardy_plus_matrix(basis)).unwrap(),
                Classification::Neither(_)
            ));
        }
        let Basis::Line { grid } = line() else { unreachable!() };
        assert!(matches!(
            classify_pm_hilbert(&position_matrix(grid)).unwrap(),
            Classification::Neither(_)
        ));
        let half = hilbert_matrix(line()).scale(c(0.5, 0.0));
        let Classification::Neither(why) = classify_pm_hilbert(&half).unwrap() else {
            panic!()
        };
        assert!(why.starts_with("not norm-preserving"), "{why}");
    }

    #[test]
    fn json_fields() {
        let d = decompose_circle_operator(&hilbert_matrix(Basis::Fourier { k_max: 2 })).unwrap();
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["k1"][1], -1.0);
        assert_eq!(v["omega"][1], 1.0);
        assert!(v["residuals"]["plus"].is_number());
        let d = decompose_line_operator(&hilbert_matrix(line())).unwrap();
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert!(v["k0"].is_null() && v["omega"].is_null());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn synthesis_round_trips(lr in -5.0f64..5.0, li in -5.0f64..5.0, er in -5.0f64..5.0, ei in -5.0f64..5.0) {
            let (lambda, eta) = (c(lr, li), c(er, ei));
            let d = decompose_line_operator(&synthesize_commuting_operator(lambda, eta, line())).unwrap();
            prop_assert!(close(d.lambda, lambda, 1e-12) && close(d.eta, eta, 1e-12));
            prop_assert!(d.max_residual() <= 1e-12);
        }
    }
}
