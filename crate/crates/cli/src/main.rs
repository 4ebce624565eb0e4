//! Command-line front-end: matrix file I/O and one subcommand per
//! library operation.
//!
//! Exit codes: 0 = affirmative answer, 1 = negative mathematical answer
//! (no root, characterization fails), 2 = usage or input error.

mod matfile;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kronroot::{
    char_divides, check_square, check_sum_rank, kth_root, rank, rearrange_factor, rearrange_sum,
    square_root, Error, Matrix, RootStatus, Shape, SquareRootCertificate, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "kronroot",
    version,
    about = "Kronecker rearrangement operators and root extraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// The square rearrangement R (k = 2 only).
    R,
    /// The j-th rearrangement; requires --j.
    J,
    /// The sum of all k factor rearrangements.
    Sum,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker product of two matrix files.
    Kron {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-th Kronecker power of a matrix file.
    Power {
        file: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a rearrangement operator to an m^k x n^k matrix.
    Rearrange {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a k-th Kronecker root of an m^k x n^k matrix.
    Root {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the root characterization quantities and whether they hold.
    Check {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Anything that should abort with exit code 2.
#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<matfile::ParseError> for CliError {
    fn from(e: matfile::ParseError) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    Ok(matfile::parse(&text)?)
}

fn emit(mat: &Matrix, out: Option<&Path>) -> Result<(), CliError> {
    let text = matfile::render(mat);
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `--tol` only applies to floating fields; with exact fields it is a
/// usage error. Defaults to 1e-10.
fn resolve_tol(mat: &Matrix, tol: Option<f64>) -> Result<f64, CliError> {
    match tol {
        Some(_) if mat.field().is_exact() => Err(CliError(format!(
            "--tol does not apply to the exact field {}",
            mat.field()
        ))),
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            Err(CliError(format!("--tol must be a nonnegative number, got {t}")))
        }
        Some(t) => Ok(t),
        None => Ok(DEFAULT_TOL),
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Kron { a, b, out } => {
            let a = load(&a)?;
            let b = load(&b)?;
            emit(&a.kron(&b)?, out.as_deref())?;
            Ok(0)
        }
        Command::Power { file, k, out } => {
            let mat = load(&file)?;
            emit(&mat.kron_power(k)?, out.as_deref())?;
            Ok(0)
        }
        Command::Rearrange {
            file,
            m,
            n,
            k,
            mode,
            j,
            out,
        } => {
            let mat = load(&file)?;
            let shape = Shape::new(m, n, k)?;
            if mode != Mode::J && j.is_some() {
                return Err(CliError("--j only applies to --mode j".into()));
            }
            let result = match mode {
                Mode::R => {
                    if k != 2 {
                        return Err(CliError("--mode r requires --k 2".into()));
                    }
                    rearrange_factor(&mat, shape, 1)?
                }
                Mode::J => {
                    let j = j.ok_or_else(|| CliError("--mode j requires --j".into()))?;
                    rearrange_factor(&mat, shape, j)?
                }
                Mode::Sum => {
                    if char_divides(mat.field(), k) {
                        return Err(CliError(format!(
                            "characteristic {} divides k = {k}; the summed \
                             rearrangement is obstructed",
                            mat.field().characteristic()
                        )));
                    }
                    rearrange_sum(&mat, shape)?
                }
            };
            emit(&result, out.as_deref())?;
            Ok(0)
        }
        Command::Root {
            file,
            m,
            n,
            k,
            tol,
            out,
        } => {
            let mat = load(&file)?;
            let tol = resolve_tol(&mat, tol)?;
            let shape = Shape::new(m, n, k)?;
            let certificate = if k == 2 {
                Some(check_square(&mat, m, n, tol)?)
            } else {
                None
            };
            let outcome = if k == 2 {
                square_root(&mat, m, n, tol)?
            } else {
                kth_root(&mat, shape, tol)?
            };
            let status_line = |status: &str| match &certificate {
                Some(cert) => format!(
                    "{status} symmetric={} rank={} trace={}",
                    cert.symmetric, cert.rank, cert.trace
                ),
                None => status.to_string(),
            };
            match outcome.status {
                RootStatus::Found | RootStatus::ZeroMatrix => {
                    emit(&outcome.root.expect("root present"), out.as_deref())?;
                    Ok(0)
                }
                RootStatus::FoundComplexOnly => {
                    println!("{}", status_line("COMPLEX_ROOT_EXISTS"));
                    if let Some(path) = out.as_deref() {
                        emit(&outcome.root.expect("root present"), Some(path))?;
                    }
                    Ok(1)
                }
                RootStatus::NotAKroneckerPower => {
                    println!("{}", status_line("NOT_A_KRONECKER_POWER"));
                    Ok(1)
                }
                RootStatus::NoRootInField => {
                    println!("{}", status_line("NO_ROOT_IN_FIELD"));
                    Ok(1)
                }
                RootStatus::CharacteristicObstruction => {
                    unreachable!("the extraction route does not use the summed rearrangement")
                }
            }
        }
        Command::Check { file, m, n, k, tol } => {
            let mat = load(&file)?;
            let tol = resolve_tol(&mat, tol)?;
            let shape = Shape::new(m, n, k)?;
            let sum_rank = if char_divides(mat.field(), k) {
                None
            } else {
                Some(check_sum_rank(&mat, shape, tol)?.rank)
            };
            let sum_rank_text = sum_rank
                .map(|r| r.to_string())
                .unwrap_or_else(|| "obstructed".to_string());
            if k == 2 {
                let SquareRootCertificate {
                    symmetric,
                    rank,
                    trace,
                    ..
                } = check_square(&mat, m, n, tol)?;
                println!(
                    "symmetric={symmetric} rank={rank} sum_rank={sum_rank_text} trace={trace}"
                );
                Ok(u8::from(!(symmetric && rank == 1)))
            } else {
                let first = rearrange_factor(&mat, shape, 1)?;
                let r1 = rank(&first, tol);
                println!("rank={r1} sum_rank={sum_rank_text}");
                // Necessity: rank-one summed rearrangement where usable,
                // rank-one first rearrangement otherwise.
                let holds = match sum_rank {
                    Some(sr) => sr == 1,
                    None => r1 == 1,
                };
                Ok(u8::from(!holds))
            }
        }
    }
}
