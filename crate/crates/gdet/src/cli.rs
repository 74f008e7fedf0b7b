//! Command-line front end.
//!
//! One matrix per file; `solve` and `member` take separate files for the
//! coefficient matrix, right-hand side, basis, and point, so invocations
//! compose in shell pipelines. Text output prints one value per line in the
//! shortest representation that parses back to the same double; `--json`
//! emits a single JSON object instead. When a sign decision rested on a
//! pivot near the zero threshold, the output carries an
//! `ill_conditioned_sign` advisory (a stderr warning in text mode, a field
//! in JSON mode).
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 dimension error,
//! 4 singular/inconsistent system or dependent basis, 5 capacity guard
//! exceeded on an oracle path.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::det::{self, gdet};
use crate::error::Error;
use crate::geometry::{self, VolumeResult};
use crate::matrix::{Matrix, MatrixFormat, ToleranceConfig};
use crate::sign;

/// Fully resolved invocation: one command plus the shared switches.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub format: MatrixFormat,
    pub json: bool,
    pub tol: ToleranceConfig,
    /// Force the minor-sum definitional path (det, sign, volume).
    pub oracle: bool,
    /// Also run the exact integer oracle (det, sign, volume).
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub enum Command {
    /// Signed generalized determinant of the matrix in FILE.
    Det { file: PathBuf },
    /// Sign of the matrix in FILE.
    Sign { file: PathBuf },
    /// Solve the consistent overdetermined system A x = b.
    Solve { matrix: PathBuf, rhs: PathBuf },
    /// Oriented volume of the parallelepiped spanned by the columns of FILE.
    Volume { file: PathBuf },
    /// Membership of a point in the span of the basis columns (optionally
    /// shifted by an offset vector).
    Member {
        basis: PathBuf,
        point: PathBuf,
        offset: Option<PathBuf>,
    },
    /// Both sides of Gdet(A·B) = Gdet(A)·Gdet(B) for square B.
    CheckMul { left: PathBuf, right: PathBuf },
    /// Both sides of the generalized Cauchy-Binet identity at subset size k.
    CheckCb { file: PathBuf, k: usize },
}

#[derive(Parser, Debug)]
#[command(
    name = "gdet",
    version,
    about = "Generalized determinants of rectangular real matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArg,

    /// Parse matrix files as comma-separated fields instead of whitespace.
    #[arg(long, global = true)]
    csv: bool,

    /// Emit a JSON object instead of text lines.
    #[arg(long, global = true)]
    json: bool,

    /// Relative zero tolerance (default 1e-10; the GDET_TOL_REL environment
    /// variable overrides the default, this flag overrides both).
    #[arg(long, global = true, value_name = "X")]
    rel_tol: Option<f64>,

    /// Absolute zero tolerance (default 1e-12).
    #[arg(long, global = true, value_name = "X")]
    abs_tol: Option<f64>,

    /// Compute through the minor-sum definitional oracle (det, sign, volume).
    #[arg(long, global = true)]
    oracle: bool,

    /// Also run the exact integer oracle and report its exact sign and
    /// squared magnitude (det, sign, volume).
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Subcommand, Debug)]
enum CommandArg {
    /// Signed generalized determinant of the matrix in FILE
    Det { file: PathBuf },
    /// Sign (-1, 0, or 1) of the matrix in FILE
    Sign { file: PathBuf },
    /// Solve the consistent system A x = b for full-column-rank A
    Solve { afile: PathBuf, bfile: PathBuf },
    /// Oriented volume of the parallelepiped spanned by the columns of FILE
    Volume { file: PathBuf },
    /// Test whether POINTFILE lies in the span of the columns of BASISFILE
    Member {
        basisfile: PathBuf,
        pointfile: PathBuf,
        /// Offset vector file: tests membership in offset + span(basis)
        #[arg(long, value_name = "OFILE")]
        offset: Option<PathBuf>,
    },
    /// Evaluate Gdet(A·B) against Gdet(A)·Gdet(B) for square B
    #[command(name = "check-mul")]
    CheckMul { afile: PathBuf, bfile: PathBuf },
    /// Evaluate the generalized Cauchy-Binet identity at subset size K
    #[command(name = "check-cb")]
    CheckCb { file: PathBuf, k: usize },
}

/// Parses arguments, resolves the tolerance (flag, then GDET_TOL_REL, then
/// default), and runs. Returns the process exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match config_from(cli) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn config_from(cli: Cli) -> Result<CliConfig, Error> {
    let rel = match cli.rel_tol {
        Some(v) => v,
        None => match std::env::var("GDET_TOL_REL").ok() {
            Some(s) => s.trim().parse::<f64>().map_err(|_| {
                Error::Config(format!("GDET_TOL_REL must be a real number, got `{s}`"))
            })?,
            None => ToleranceConfig::default().rel_zero,
        },
    };
    let abs = cli.abs_tol.unwrap_or(ToleranceConfig::default().abs_zero);
    let tol = ToleranceConfig::new(rel, abs)?;
    let command = match cli.command {
        CommandArg::Det { file } => Command::Det { file },
        CommandArg::Sign { file } => Command::Sign { file },
        CommandArg::Solve { afile, bfile } => Command::Solve {
            matrix: afile,
            rhs: bfile,
        },
        CommandArg::Volume { file } => Command::Volume { file },
        CommandArg::Member {
            basisfile,
            pointfile,
            offset,
        } => Command::Member {
            basis: basisfile,
            point: pointfile,
            offset,
        },
        CommandArg::CheckMul { afile, bfile } => Command::CheckMul {
            left: afile,
            right: bfile,
        },
        CommandArg::CheckCb { file, k } => Command::CheckCb { file, k },
    };
    let config = CliConfig {
        command,
        format: if cli.csv {
            MatrixFormat::Csv
        } else {
            MatrixFormat::Whitespace
        },
        json: cli.json,
        tol,
        oracle: cli.oracle,
        exact: cli.exact,
    };
    if (config.oracle || config.exact) && !supports_oracle_flags(&config.command) {
        return Err(Error::Config(
            "--oracle and --exact apply only to det, sign, and volume".into(),
        ));
    }
    Ok(config)
}

fn supports_oracle_flags(command: &Command) -> bool {
    matches!(
        command,
        Command::Det { .. } | Command::Sign { .. } | Command::Volume { .. }
    )
}

/// Runs a resolved configuration, writing results to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_command(config, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::NonFinite { .. } | Error::Io(_) => 2,
        Error::Dimension(_) => 3,
        Error::Singular(_)
        | Error::Inconsistent { .. }
        | Error::DependentBasis
        | Error::RankDeficient => 4,
        Error::Capacity(_) => 5,
        Error::NonInteger { .. } | Error::Config(_) => 1,
    }
}

fn load_matrix(path: &Path, format: MatrixFormat) -> Result<Matrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Matrix::parse(&text, format)
}

fn load_vector(path: &Path, format: MatrixFormat) -> Result<Vec<f64>, Error> {
    let m = load_matrix(path, format)?;
    if m.cols() == 1 {
        Ok(m.column(1))
    } else if m.rows() == 1 {
        Ok(m.row(1).to_vec())
    } else {
        Err(Error::Dimension(format!(
            "{} must hold a vector (single row or single column), got {}x{}",
            path.display(),
            m.rows(),
            m.cols()
        )))
    }
}

fn run_command(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Error> {
    match &config.command {
        Command::Det { file } => {
            let a = load_matrix(file, config.format)?;
            let analysis = sign::analyze(&a, config.tol);
            let result = if config.oracle {
                det::gdet_minor_oracle(&a, config.tol)?
            } else {
                gdet(&a, config.tol)
            };
            let exact = if config.exact {
                Some(det::gdet_exact_oracle(&a)?)
            } else {
                None
            };
            if config.json {
                let mut obj = json!({
                    "sign": result.sign.value(),
                    "magnitude": result.magnitude,
                    "value": result.value,
                    "principal_rows": result.principal.indices(),
                });
                if analysis.ill_conditioned {
                    obj["ill_conditioned_sign"] = json!(true);
                }
                if let Some(e) = &exact {
                    obj["exact_sign"] = json!(e.sign.value());
                    obj["exact_magnitude_squared"] = json!(e.magnitude_squared.to_string());
                }
                writeln!(out, "{obj}")?;
            } else {
                writeln!(out, "{}", result.value)?;
                if let Some(e) = &exact {
                    writeln!(out, "# exact_sign = {}", e.sign)?;
                    writeln!(out, "# exact_magnitude_squared = {}", e.magnitude_squared)?;
                }
                warn_if_ill_conditioned(analysis.ill_conditioned, err)?;
            }
        }
        Command::Sign { file } => {
            let a = load_matrix(file, config.format)?;
            let analysis = sign::analyze(&a, config.tol);
            let value = if config.exact {
                det::gdet_exact_oracle(&a)?.sign
            } else if config.oracle {
                sign::sign_oracle(&a, config.tol)?
            } else {
                analysis.sign
            };
            if config.json {
                let mut obj = json!({
                    "sign": value.value(),
                    "principal_rows": analysis.principal.indices(),
                });
                if analysis.ill_conditioned {
                    obj["ill_conditioned_sign"] = json!(true);
                }
                writeln!(out, "{obj}")?;
            } else {
                writeln!(out, "{value}")?;
                warn_if_ill_conditioned(analysis.ill_conditioned, err)?;
            }
        }
        Command::Solve { matrix, rhs } => {
            let a = load_matrix(matrix, config.format)?;
            let b = load_vector(rhs, config.format)?;
            let solution = geometry::cramer_solve(&a, &b, config.tol)?;
            if config.json {
                let obj = json!({
                    "x": solution.x,
                    "residual": solution.residual_norm,
                });
                writeln!(out, "{obj}")?;
            } else {
                // One coordinate per line: the output is itself a column
                // vector in the matrix text format.
                for v in &solution.x {
                    writeln!(out, "{v}")?;
                }
                writeln!(out, "# residual = {}", solution.residual_norm)?;
            }
        }
        Command::Volume { file } => {
            let generators = load_matrix(file, config.format)?;
            let analysis = sign::analyze(&generators, config.tol);
            let result = if config.oracle {
                let r = det::gdet_minor_oracle(&generators, config.tol)?;
                VolumeResult {
                    volume: r.magnitude,
                    orientation: r.sign,
                    principal: r.principal,
                }
            } else {
                geometry::generalized_volume(&generators, config.tol)
            };
            let exact = if config.exact {
                Some(det::gdet_exact_oracle(&generators)?)
            } else {
                None
            };
            if config.json {
                let mut obj = json!({
                    "sign": result.orientation.value(),
                    "magnitude": result.volume,
                    "value": result.orientation.as_f64() * result.volume,
                    "principal_rows": result.principal.indices(),
                });
                if analysis.ill_conditioned {
                    obj["ill_conditioned_sign"] = json!(true);
                }
                if let Some(e) = &exact {
                    obj["exact_sign"] = json!(e.sign.value());
                    obj["exact_magnitude_squared"] = json!(e.magnitude_squared.to_string());
                }
                writeln!(out, "{obj}")?;
            } else {
                writeln!(out, "{}", result.volume)?;
                writeln!(out, "# orientation = {}", result.orientation)?;
                let rows: Vec<String> = result
                    .principal
                    .indices()
                    .iter()
                    .map(|i| i.to_string())
                    .collect();
                writeln!(out, "# principal_rows = {}", rows.join(" "))?;
                if let Some(e) = &exact {
                    writeln!(out, "# exact_sign = {}", e.sign)?;
                    writeln!(out, "# exact_magnitude_squared = {}", e.magnitude_squared)?;
                }
                warn_if_ill_conditioned(analysis.ill_conditioned, err)?;
            }
        }
        Command::Member {
            basis,
            point,
            offset,
        } => {
            let basis = load_matrix(basis, config.format)?;
            let point = load_vector(point, config.format)?;
            let member = match offset {
                Some(path) => {
                    let offset = load_vector(path, config.format)?;
                    geometry::in_variety(&basis, &offset, &point, config.tol)?
                }
                None => geometry::in_subspace(&basis, &point, config.tol)?,
            };
            if config.json {
                writeln!(out, "{}", json!({ "member": member }))?;
            } else {
                writeln!(out, "{member}")?;
            }
        }
        Command::CheckMul { left, right } => {
            let a = load_matrix(left, config.format)?;
            let b = load_matrix(right, config.format)?;
            let check = det::check_multiplication(&a, &b, config.tol)?;
            if config.json {
                let obj = json!({
                    "lhs": check.lhs,
                    "rhs": check.rhs,
                    "holds": check.holds,
                });
                writeln!(out, "{obj}")?;
            } else {
                writeln!(out, "lhs = {}", check.lhs)?;
                writeln!(out, "rhs = {}", check.rhs)?;
                writeln!(out, "holds = {}", check.holds)?;
            }
        }
        Command::CheckCb { file, k } => {
            let a = load_matrix(file, config.format)?;
            let check = det::check_cauchy_binet(&a, *k, config.tol)?;
            if config.json {
                let obj = json!({
                    "lhs": check.lhs,
                    "rhs": check.rhs,
                    "holds": check.holds,
                    "coefficient": check.coefficient as u64,
                    "coefficient_literal": check.coefficient_literal as u64,
                });
                writeln!(out, "{obj}")?;
            } else {
                writeln!(out, "lhs = {}", check.lhs)?;
                writeln!(out, "rhs = {}", check.rhs)?;
                writeln!(out, "holds = {}", check.holds)?;
                writeln!(out, "# coefficient = {}", check.coefficient)?;
                writeln!(out, "# coefficient_literal = {}", check.coefficient_literal)?;
            }
        }
    }
    Ok(())
}

fn warn_if_ill_conditioned(flag: bool, err: &mut dyn Write) -> Result<(), Error> {
    if flag {
        writeln!(
            err,
            "warning: ill_conditioned_sign: a pivot decision was within a factor of 10 \
             of the zero threshold; the sign is unreliable at this tolerance"
        )?;
    }
    Ok(())
}
