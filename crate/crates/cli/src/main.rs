use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hilbert_cli::apply::{self, ApplyParams, Op, Space, DEFAULT_DECOMPOSE_TOL};
use hilbert_cli::error::{read_file, write_file};
use hilbert_cli::{run_verify, CliError, SuiteConfig, Target};
use hilbert_core::symmetry::OperatorMatrix;
use hilbert_core::SignalFile;

/// Hilbert-transform operators, group actions and their verification suites.
#[derive(Parser)]
#[command(name = "hilbert-ops", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its JSON report.
    Verify {
        /// line, circle, symmetry or all
        target: String,
        /// JSON config; missing fields take defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides `rng_seed`
        #[arg(long)]
        seed: Option<u64>,
        /// Also write a CSV table of check_id, measured, tolerance
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write two-column `index measured` data for plotting
        #[arg(long)]
        gnuplot_dat: Option<PathBuf>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply one operator or action to a signal file.
    Apply {
        /// hilbert, hilbert-pv, hardy+, hardy-, dilate, translate, rep,
        /// circular-hilbert, cauchy-pv, cauchy-symbol, semigroup, moebius, convolve
        op: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// Moebius parameter in [0, 1)
        #[arg(long)]
        blaschke_a: Option<f64>,
        /// jacobian (default) or szego
        #[arg(long)]
        weight: Option<String>,
        /// Second operand for convolve
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Fit the commutant form to an operator matrix file.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        /// line or circle
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = DEFAULT_DECOMPOSE_TOL)]
        tol: f64,
    },
}

fn load_signal(path: &Path) -> Result<SignalFile, CliError> {
    Ok(SignalFile::from_json(&read_file(path)?)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Verify {
            target,
            config,
            seed,
            csv,
            gnuplot_dat,
            out,
        } => {
            let target: Target = target.parse().map_err(CliError::Usage)?;
            let mut cfg = match config {
                Some(path) => SuiteConfig::from_json(&read_file(&path)?)?,
                None => SuiteConfig::default(),
            };
            if let Some(s) = seed {
                cfg.rng_seed = s;
            }
            let report = run_verify(target, &cfg);
            eprint!("{}", report.to_table());
            match out {
                Some(path) => write_file(&path, &report.to_json())?,
                None => println!("{}", report.to_json()),
            }
            if let Some(path) = csv {
                write_file(&path, &report.to_csv())?;
            }
            if let Some(path) = gnuplot_dat {
                write_file(&path, &report.to_gnuplot_dat())?;
            }
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Internal(format!(
                    "{} of {} checks failed",
                    report.summary.failed, report.summary.total
                )))
            }
        }
        Command::Apply {
            op,
            input,
            out,
            a,
            b,
            q,
            p,
            beta,
            theta,
            blaschke_a,
            weight,
            with,
        } => {
            let op: Op = op.parse()?;
            let signal = load_signal(&input)?;
            let params = ApplyParams {
                a,
                b,
                q,
                p,
                beta,
                theta,
                blaschke_a,
                weight: weight.as_deref().map(apply::parse_weight).transpose()?,
                with: with.as_deref().map(load_signal).transpose()?,
            };
            let applied = apply::apply(op, &signal, &params)?;
            write_file(&out, &applied.output.to_json())?;
            println!("{}", applied.metadata);
            Ok(())
        }
        Command::Decompose { input, space, tol } => {
            let space: Space = space.parse()?;
            let t = OperatorMatrix::from_json(&read_file(&input)?)?;
            let d = apply::decompose(&t, space, tol)?;
            println!("{}", d.json);
            if d.within {
                Ok(())
            } else {
                Err(CliError::ResidualExceeded(format!(
                    "not in the commutant form: max residual {:.3e} > {tol:.1e}",
                    d.max_residual
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hilbert-ops: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
