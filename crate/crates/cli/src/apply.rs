//! `apply` and `decompose`: single operator invocations on files.

use std::str::FromStr;

use serde_json::{json, Value};

use hilbert_core::circle::{
    cauchy_pv, cauchy_symbol, circular_convolve, circular_hilbert, circular_hilbert_quadrature, moebius_act,
    semigroup_act, MoebiusElement, MoebiusWeight, RationalScale,
};
use hilbert_core::line::{
    dilate, hardy_project, hilbert_multiplier, hilbert_pv_quadrature, rep_natural, translate, AffineElement, HardySign,
    Warning,
};
use hilbert_core::symmetry::{decompose_circle_operator, decompose_line_operator, Basis, OperatorMatrix};
use hilbert_core::{CircleSamples, CircleSignal, LineSignal, SignalFile};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Hilbert,
    HilbertPv,
    HardyPlus,
    HardyMinus,
    Dilate,
    Translate,
    Rep,
    CircularHilbert,
    CauchyPv,
    CauchySymbol,
    Semigroup,
    Moebius,
    Convolve,
}

impl Op {
    pub const ALL: [Op; 13] = [
        Op::Hilbert,
        Op::HilbertPv,
        Op::HardyPlus,
        Op::HardyMinus,
        Op::Dilate,
        Op::Translate,
        Op::Rep,
        Op::CircularHilbert,
        Op::CauchyPv,
        Op::CauchySymbol,
        Op::Semigroup,
        Op::Moebius,
        Op::Convolve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Hilbert => "hilbert",
            Op::HilbertPv => "hilbert-pv",
            Op::HardyPlus => "hardy+",
            Op::HardyMinus => "hardy-",
            Op::Dilate => "dilate",
            Op::Translate => "translate",
            Op::Rep => "rep",
            Op::CircularHilbert => "circular-hilbert",
            Op::CauchyPv => "cauchy-pv",
            Op::CauchySymbol => "cauchy-symbol",
            Op::Semigroup => "semigroup",
            Op::Moebius => "moebius",
            Op::Convolve => "convolve",
        }
    }
}

impl FromStr for Op {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        // the unicode minus is accepted as a spelling of `hardy-`
        let s = if s == "hardy\u{2212}" { "hardy-" } else { s };
        Op::ALL.into_iter().find(|op| op.name() == s).ok_or_else(|| {
            let names: Vec<_> = Op::ALL.iter().map(|o| o.name()).collect();
            CliError::Usage(format!("unknown op `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Action parameters; each op reads the ones it needs.
#[derive(Debug, Clone, Default)]
pub struct ApplyParams {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub q: Option<u32>,
    pub p: Option<u32>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub blaschke_a: Option<f64>,
    pub weight: Option<MoebiusWeight>,
    /// Second operand of `convolve`.
    pub with: Option<SignalFile>,
}

pub fn parse_weight(s: &str) -> Result<MoebiusWeight, CliError> {
    match s {
        "jacobian" => Ok(MoebiusWeight::Jacobian),
        "szego" => Ok(MoebiusWeight::SzegoKernel),
        other => Err(CliError::Usage(format!(
            "unknown weight `{other}` (expected jacobian or szego)"
        ))),
    }
}

/// Result of one `apply`: the output signal and metadata to echo.
#[derive(Debug, Clone)]
pub struct Applied {
    pub output: SignalFile,
    pub metadata: Value,
}

fn need<T: Copy>(v: Option<T>, flag: &str, op: Op) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("op `{}` needs --{flag}", op.name())))
}

fn kind_error(op: Op, found: &SignalFile, wanted: &str) -> CliError {
    CliError::Usage(format!(
        "op `{}` takes a {wanted} file, got `{}`",
        op.name(),
        found.kind()
    ))
}

fn line_input(op: Op, f: &SignalFile) -> Result<LineSignal, CliError> {
    match f {
        SignalFile::Line(s) => Ok(s.clone()),
        other => Err(kind_error(op, other, "line")),
    }
}

/// Circle ops act on coefficients; sample files are converted at full degree
/// and converted back.
fn on_circle(op: Op, f: &SignalFile, act: impl Fn(&CircleSignal) -> CircleSignal) -> Result<SignalFile, CliError> {
    match f {
        SignalFile::CircleCoeffs(c) => Ok(SignalFile::CircleCoeffs(act(c))),
        SignalFile::CircleSamples(s) => {
            let c = s.to_signal(s.max_degree())?;
            Ok(SignalFile::CircleSamples(act(&c).to_samples(s.n())?))
        }
        other => Err(kind_error(op, other, "circle-coeffs or circle-samples")),
    }
}

fn warning_list(ws: &[Warning]) -> Value {
    Value::from(ws.iter().map(|w| w.to_string()).collect::<Vec<_>>())
}

pub fn apply(op: Op, input: &SignalFile, params: &ApplyParams) -> Result<Applied, CliError> {
    let mut meta = json!({ "op": op.name(), "input": input.kind() });
    let mut warnings = Vec::new();
    let output = match op {
        Op::Hilbert => SignalFile::Line(hilbert_multiplier(&line_input(op, input)?)),
        Op::HilbertPv => match input {
            SignalFile::Line(f) => {
                let out = hilbert_pv_quadrature(f);
                warnings = out.warnings;
                SignalFile::Line(out.value)
            }
            SignalFile::CircleSamples(s) => SignalFile::CircleSamples(circular_hilbert_quadrature(s)?),
            other => return Err(kind_error(op, other, "line or circle-samples")),
        },
        Op::HardyPlus => SignalFile::Line(hardy_project(&line_input(op, input)?, HardySign::Plus)),
        Op::HardyMinus => SignalFile::Line(hardy_project(&line_input(op, input)?, HardySign::Minus)),
        Op::Dilate => {
            let a = need(params.a, "a", op)?;
            meta["a"] = a.into();
            SignalFile::Line(dilate(&line_input(op, input)?, a)?)
        }
        Op::Translate => {
            let b = need(params.b, "b", op)?;
            meta["b"] = b.into();
            let out = translate(&line_input(op, input)?, b)?;
            warnings = out.warnings;
            SignalFile::Line(out.value)
        }
        Op::Rep => {
            let g = AffineElement::new(params.a.unwrap_or(1.0), params.b.unwrap_or(0.0))?;
            meta["a"] = g.a().into();
            meta["b"] = g.b().into();
            let out = rep_natural(&line_input(op, input)?, &g)?;
            warnings = out.warnings;
            SignalFile::Line(out.value)
        }
        Op::CircularHilbert => on_circle(op, input, circular_hilbert)?,
        Op::CauchyPv => on_circle(op, input, cauchy_pv)?,
        Op::CauchySymbol => on_circle(op, input, cauchy_symbol)?,
        Op::Semigroup => {
            let r = RationalScale::new(
                need(params.q, "q", op)?,
                need(params.p, "p", op)?,
                params.beta.unwrap_or(0.0),
            )?;
            meta["q"] = r.q().into();
            meta["p"] = r.p().into();
            meta["beta"] = r.beta().into();
            match input {
                SignalFile::CircleCoeffs(c) => SignalFile::CircleCoeffs(semigroup_act(c, &r)),
                other => return Err(kind_error(op, other, "circle-coeffs")),
            }
        }
        Op::Moebius => {
            let m = MoebiusElement::new(params.theta.unwrap_or(0.0), params.blaschke_a.unwrap_or(0.0))?;
            let weight = params.weight.unwrap_or_default();
            meta["theta"] = m.theta().into();
            meta["blaschke_a"] = m.a().into();
            meta["weight"] = match weight {
                MoebiusWeight::Jacobian => "jacobian",
                MoebiusWeight::SzegoKernel => "szego",
            }
            .into();
            let samples: CircleSamples = match input {
                SignalFile::CircleSamples(s) => s.clone(),
                other => return Err(kind_error(op, other, "circle-samples")),
            };
            SignalFile::CircleSamples(moebius_act(&samples, &m, weight)?)
        }
        Op::Convolve => {
            let g = match &params.with {
                Some(SignalFile::CircleCoeffs(g)) => g,
                Some(other) => return Err(kind_error(op, other, "circle-coeffs (--with)")),
                None => return Err(CliError::Usage("op `convolve` needs --with".into())),
            };
            match input {
                SignalFile::CircleCoeffs(f) => SignalFile::CircleCoeffs(circular_convolve(f, g)?),
                other => return Err(kind_error(op, other, "circle-coeffs")),
            }
        }
    };
    meta["output"] = output.kind().into();
    meta["warnings"] = warning_list(&warnings);
    Ok(Applied { output, metadata: meta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Line,
    Circle,
}

impl FromStr for Space {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "line" => Ok(Space::Line),
            "circle" => Ok(Space::Circle),
            other => Err(CliError::Usage(format!(
                "unknown space `{other}` (expected line or circle)"
            ))),
        }
    }
}

pub const DEFAULT_DECOMPOSE_TOL: f64 = 1e-8;

/// Decomposition JSON and whether every residual is within `tol`.
#[derive(Debug, Clone)]
pub struct Decomposed {
    pub json: String,
    pub within: bool,
    pub max_residual: f64,
}

pub fn decompose(t: &OperatorMatrix, space: Space, tol: f64) -> Result<Decomposed, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let d = match (space, t.basis()) {
        (Space::Line, Basis::Line { .. }) => decompose_line_operator(t)?,
        (Space::Circle, Basis::Fourier { .. }) => decompose_circle_operator(t)?,
        (Space::Line, _) => return Err(CliError::Usage("--space line needs an operator on a line basis".into())),
        (Space::Circle, _) => {
            return Err(CliError::Usage(
                "--space circle needs an operator on a fourier basis".into(),
            ))
        }
    };
    let max_residual = d.max_residual();
    Ok(Decomposed {
        json: d.to_json(),
        within: max_residual <= tol,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hilbert_core::symmetry::{hilbert_matrix, position_matrix};
    use hilbert_core::{Complex64, Grid1D, InnerProductSpace};

    fn coeffs(k: usize, entries: &[(i64, f64)]) -> CircleSignal {
        CircleSignal::from_fn(k, |i| {
            entries
                .iter()
                .find(|(j, _)| *j == i)
                .map(|&(_, v)| Complex64::new(v, 0.0))
                .unwrap_or_default()
        })
        .unwrap()
    }

    #[test]
    fn op_names_round_trip() {
        for op in Op::ALL {
            assert_eq!(op.name().parse::<Op>().unwrap(), op);
        }
        assert_eq!("hardy\u{2212}".parse::<Op>().unwrap(), Op::HardyMinus);
        assert!(matches!("nope".parse::<Op>(), Err(CliError::Usage(_))));
    }

    #[test]
    fn semigroup_of_t_squared() {
        let input = SignalFile::CircleCoeffs(coeffs(2, &[(2, 1.0)]));
        let params = ApplyParams {
            q: Some(1),
            p: Some(2),
            beta: Some(0.0),
            ..Default::default()
        };
        let SignalFile::CircleCoeffs(out) = apply(Op::Semigroup, &input, &params).unwrap().output else {
            panic!()
        };
        let want = coeffs(out.k_max(), &[(1, 2f64.sqrt())]);
        assert!(out.sub(&want).unwrap().norm() <= 1e-15);
    }

    #[test]
    fn circle_ops_accept_samples() {
        let s = CircleSamples::from_fn(16, |_| Complex64::new(2.0, 0.0)).unwrap();
        let out = apply(
            Op::CircularHilbert,
            &SignalFile::CircleSamples(s),
            &ApplyParams::default(),
        )
        .unwrap();
        let SignalFile::CircleSamples(z) = out.output else {
            panic!()
        };
        assert!(z.max_abs() <= 1e-15);
    }

    #[test]
    fn missing_flags_and_wrong_kinds_are_usage_errors() {
        let grid = Grid1D::over(-4.0, 4.0, 16).unwrap();
        let line = SignalFile::Line(LineSignal::zeros(grid));
        assert!(matches!(
            apply(Op::Dilate, &line, &ApplyParams::default()),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            apply(Op::CauchyPv, &line, &ApplyParams::default()),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn decompose_flags_non_commuting_operators() {
        let grid = Grid1D::over(-8.0, 8.0, 32).unwrap();
        let h = decompose(&hilbert_matrix(Basis::Line { grid }), Space::Line, 1e-8).unwrap();
        assert!(h.within);
        let x = decompose(&position_matrix(grid), Space::Line, 1e-8).unwrap();
        assert!(!x.within && x.max_residual > 0.1);
        assert!(decompose(&position_matrix(grid), Space::Circle, 1e-8).is_err());
    }
}
