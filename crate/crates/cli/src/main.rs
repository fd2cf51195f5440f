//! `weil`: validate Lie algebras, multiply and bracket jets, and run the
//! verification suites.
//!
//! Exit codes: 0 success, 1 a mathematical check failed or inputs are
//! incompatible, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use weil_core::bch_engine::bch_mul;
use weil_core::lie_core::{builtin, LieAlgebraSpec};
use weil_core::matrix_oracle::{matrix_mul, MatrixRep};
use weil_core::verify::{assemble, plan, resolve_algebra, Suite, VerifyOptions};
use weil_core::{CoordinateSystem, Jet};

#[derive(Parser)]
#[command(name = "weil", version, about = "Exact jet group laws on Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity of an algebra given as JSON.
    Validate { path: PathBuf },
    /// Print a built-in algebra as JSON.
    Algebra {
        /// h3, sl2, so3, abelian-N, free-nilpotent-M-C, or free-nilpotent
        name: String,
        #[arg(long, default_value_t = 2)]
        generators: usize,
        #[arg(long, default_value_t = 3)]
        class: usize,
    },
    /// Multiply two jets.
    Mul {
        a: PathBuf,
        b: PathBuf,
        /// Truncate both inputs to this order first.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Via::ClosedForm)]
        via: Via,
        /// Algebra spec JSON for jets over a non-built-in algebra.
        #[arg(long)]
        algebra_file: Option<PathBuf>,
        /// Matrix representation JSON for `--via matrix` on other algebras.
        #[arg(long)]
        rep_file: Option<PathBuf>,
    },
    /// Jet bracket of two jets, printed in monomial coordinates.
    Bracket {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        algebra_file: Option<PathBuf>,
    },
    /// Run a verification suite and print the report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict to one algebra (name as for `algebra`).
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 3)]
        generators: usize,
        #[arg(long, default_value_t = 3)]
        class: usize,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Omit per-check timings so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    #[value(name = "def61")]
    ClosedForm,
    Bch,
    Matrix,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn math(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: invalid JSON: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("values serialize")
    );
}

fn load_algebra_file(path: &Option<PathBuf>) -> Result<Option<Arc<LieAlgebraSpec>>, Failure> {
    match path {
        None => Ok(None),
        Some(p) => LieAlgebraSpec::from_json(&read_json(p)?)
            .map(Some)
            .map_err(|e| usage(format!("{}: {e}", p.display()))),
    }
}

fn load_jet(path: &Path, custom: &Option<Arc<LieAlgebraSpec>>) -> Result<Jet, Failure> {
    let value = read_json(path)?;
    Jet::from_json(&value, |name| match custom {
        Some(a) if a.name() == name => Some(a.clone()),
        _ => builtin(name),
    })
    .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn validate(path: &Path) -> Result<ExitCode, Failure> {
    let spec = LieAlgebraSpec::from_json(&read_json(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let report = spec.validate().to_check();
    print_json(&report);
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn multiply(
    a: &Path,
    b: &Path,
    order: Option<usize>,
    via: Via,
    algebra_file: &Option<PathBuf>,
    rep_file: &Option<PathBuf>,
) -> Result<ExitCode, Failure> {
    let custom = load_algebra_file(algebra_file)?;
    let mut a = load_jet(a, &custom)?.convert(CoordinateSystem::Exp);
    let mut b = load_jet(b, &custom)?.convert(CoordinateSystem::Exp);
    if let Some(n) = order {
        a = a.truncate(n).map_err(|e| math(format!("first jet: {e}")))?;
        b = b
            .truncate(n)
            .map_err(|e| math(format!("second jet: {e}")))?;
    }
    let product = match via {
        Via::ClosedForm => a.mul(&b).map_err(|e| math(e.to_string()))?,
        Via::Bch => bch_mul(&a, &b).map_err(|e| math(e.to_string()))?,
        Via::Matrix => {
            let rep = match rep_file {
                Some(p) => MatrixRep::from_json(a.algebra(), &read_json(p)?)
                    .map_err(|e| usage(format!("{}: {e}", p.display())))?,
                None => MatrixRep::builtin(a.algebra().name()).ok_or_else(|| {
                    usage(format!(
                        "no built-in representation of {}; pass --rep-file",
                        a.algebra().name()
                    ))
                })?,
            };
            matrix_mul(&rep, &a, &b).map_err(|e| math(e.to_string()))?
        }
    };
    print_json(&product.to_json());
    Ok(ExitCode::SUCCESS)
}

fn bracket(a: &Path, b: &Path, algebra_file: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    let custom = load_algebra_file(algebra_file)?;
    let a = load_jet(a, &custom)?.convert(CoordinateSystem::Monomial);
    let b = load_jet(b, &custom)?.convert(CoordinateSystem::Monomial);
    let result = a.bracket(&b).map_err(|e| math(e.to_string()))?;
    print_json(&result.to_json());
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    algebra: &Option<String>,
    generators: usize,
    class: usize,
    order: Option<usize>,
    trials: usize,
    seed: u64,
    no_timing: bool,
) -> Result<ExitCode, Failure> {
    let suite: Suite = suite.parse().map_err(|e| usage(format!("{e}")))?;
    let algebra = algebra
        .as_deref()
        .map(|name| resolve_algebra(name, generators, class))
        .transpose()
        .map_err(|e| usage(e.to_string()))?;
    let options = VerifyOptions {
        suite,
        algebra,
        order,
        trials,
        seed,
    };
    let checks = plan(&options).map_err(|e| usage(e.to_string()))?;
    let rows = checks.par_iter().map(|c| c.run()).collect();
    let report = assemble(&options, rows, !no_timing);
    print_json(&report);
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Algebra {
            name,
            generators,
            class,
        } => {
            let spec =
                resolve_algebra(&name, generators, class).map_err(|e| usage(e.to_string()))?;
            print_json(&spec.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Mul {
            a,
            b,
            order,
            via,
            algebra_file,
            rep_file,
        } => multiply(&a, &b, order, via, &algebra_file, &rep_file),
        Command::Bracket { a, b, algebra_file } => bracket(&a, &b, &algebra_file),
        Command::Verify {
            suite,
            algebra,
            generators,
            class,
            order,
            trials,
            seed,
            no_timing,
        } => verify(
            &suite, &algebra, generators, class, order, trials, seed, no_timing,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
