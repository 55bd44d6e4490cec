//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or validation failure, 2 usage
//! error, 3 budget refusal.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::{jordan_totient, Modulus};
use crate::budget::{Budget, BUDGET_ENV};
use crate::error::Error;
use crate::group::{group_order, stabilizer_order, GroupSpec};
use crate::linalg::{act, sl_inverse, MatrixModN, VectorModN};
use crate::oracle::{verify_group_counts, verify_partition};
use crate::orbits::{census, crt_join, crt_split};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "sl-orbits",
    version,
    about = "Orbits of Z_n^m under SL(m, Z_n): closed forms and exhaustive checks"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Maximum number of candidates any exhaustive enumeration may visit.
    #[arg(long, env = BUDGET_ENV, global = true, value_parser = parse_budget)]
    pub budget: Option<Budget>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Space {
    /// Dimension m.
    #[arg(short = 'm')]
    pub m: usize,
    /// Modulus n.
    #[arg(short = 'n')]
    pub n: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every orbit with its label, size and representative.
    Census(Space),
    /// Check the closed forms against exhaustive search.
    Verify(Space),
    /// Print |SL(m, Z_n)| and the order of the stabilizer of (0,...,0,1).
    Order(Space),
    /// Apply a matrix to a row vector.
    Act {
        #[arg(short = 'm')]
        m: Option<usize>,
        #[arg(short = 'n')]
        n: u64,
        /// Row vector literal, e.g. "1,2".
        #[arg(short = 'v', allow_hyphen_values = true)]
        vector: String,
        /// Matrix literal, e.g. "1,1;0,1".
        #[arg(short = 'A', allow_hyphen_values = true)]
        matrix: String,
    },
    /// Print the inverse (adjugate) of an SL matrix.
    Inverse {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 'A', allow_hyphen_values = true)]
        matrix: String,
    },
    /// Print the Jordan totient of order m at n.
    Jordan(Space),
    /// Split a vector over Z_pq into its residues, or join residues back.
    Crt {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'q')]
        q: u64,
        /// Optional check that n = p·q.
        #[arg(short = 'n')]
        n: Option<u64>,
        /// Vector over Z_pq (split) or over Z_p (join).
        #[arg(short = 'v', allow_hyphen_values = true)]
        vector: String,
        /// Vector over Z_q (join only).
        #[arg(short = 'w', allow_hyphen_values = true)]
        other: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Split,
    Join,
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    let limit: u64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    Budget::new(limit).map_err(|e| e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_error(err: &Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Domain(_) | Error::Structural(_) | Error::Parse(_) => EXIT_USAGE,
            Error::NotInSl { .. } | Error::Overflow(_) | Error::Consistency(_) => EXIT_FAILURE,
        };
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let budget = cli.budget.unwrap_or_default();
    let result = match &cli.command {
        Command::Census(s) => cmd_census(s, cli.format),
        Command::Verify(s) => return cmd_verify(s, budget, cli.format),
        Command::Order(s) => cmd_order(s, cli.format),
        Command::Act {
            m,
            n,
            vector,
            matrix,
        } => cmd_act(*m, *n, vector, matrix, cli.format),
        Command::Inverse { n, matrix } => cmd_inverse(*n, matrix, cli.format),
        Command::Jordan(s) => cmd_jordan(s, cli.format),
        Command::Crt {
            direction,
            p,
            q,
            n,
            vector,
            other,
        } => cmd_crt(*direction, *p, *q, *n, vector, other.as_deref(), cli.format),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

fn cmd_census(s: &Space, format: Format) -> crate::Result<Outcome> {
    let report = census(&GroupSpec::new(s.m, s.n)?)?;
    let mut out = Outcome::ok(match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json_lines(),
    });
    if let Some(w) = &report.warning {
        out.stderr = format!("warning: {w}\n");
    }
    Ok(out)
}

fn cmd_verify(s: &Space, budget: Budget, format: Format) -> Outcome {
    let run = || -> crate::Result<_> {
        let spec = GroupSpec::new(s.m, s.n)?;
        let mut report = verify_partition(&spec, budget)?;
        report.merge(verify_group_counts(&spec, budget)?);
        Ok(report)
    };
    match run() {
        Ok(report) => Outcome {
            code: if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            },
            stdout: match format {
                Format::Text => report.to_table(),
                Format::Json => report.to_json() + "\n",
            },
            stderr: format!("elapsed {:.3}s\n", report.elapsed.as_secs_f64()),
        },
        Err(e) => Outcome::from_error(&e),
    }
}

fn cmd_order(s: &Space, format: Format) -> crate::Result<Outcome> {
    let spec = GroupSpec::new(s.m, s.n)?;
    let order = group_order(&spec)?;
    let stab = if spec.dim() >= 2 {
        Some(stabilizer_order(&spec)?)
    } else {
        None
    };
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut out = format!("group order {order}\n");
            if let Some(stab) = stab {
                let _ = writeln!(out, "stabilizer order {stab}");
            }
            out
        }
        Format::Json => {
            json!({"m": s.m, "n": s.n, "group_order": order, "stabilizer_order": stab}).to_string()
                + "\n"
        }
    }))
}

fn cmd_act(
    m: Option<usize>,
    n: u64,
    vector: &str,
    matrix: &str,
    format: Format,
) -> crate::Result<Outcome> {
    let nn = Modulus::new(n)?;
    let a = VectorModN::parse(&nn, vector)?;
    let mat = MatrixModN::parse(&nn, matrix)?;
    if let Some(m) = m {
        if a.dim() != m || mat.dim() != m {
            return Err(Error::Structural(format!(
                "-m {m} does not match vector length {} and matrix size {}",
                a.dim(),
                mat.dim()
            )));
        }
    }
    let b = act(&a, &mat)?;
    Ok(Outcome::ok(match format {
        Format::Text => format!("{b}\n"),
        Format::Json => json!({ "result": b.components() }).to_string() + "\n",
    }))
}

fn cmd_inverse(n: u64, matrix: &str, format: Format) -> crate::Result<Outcome> {
    let nn = Modulus::new(n)?;
    let inv = sl_inverse(&MatrixModN::parse(&nn, matrix)?)?;
    Ok(Outcome::ok(match format {
        Format::Text => format!("{inv}\n"),
        Format::Json => {
            let rows: Vec<&[u64]> = (0..inv.dim()).map(|i| inv.row(i)).collect();
            json!({ "inverse": rows }).to_string() + "\n"
        }
    }))
}

fn cmd_jordan(s: &Space, format: Format) -> crate::Result<Outcome> {
    let m = u32::try_from(s.m).map_err(|_| Error::Domain(format!("dimension {}", s.m)))?;
    let value = jordan_totient(m, &Modulus::new(s.n)?)?;
    Ok(Outcome::ok(match format {
        Format::Text => format!("{value}\n"),
        Format::Json => json!({"m": s.m, "n": s.n, "jordan": value}).to_string() + "\n",
    }))
}

fn cmd_crt(
    direction: Direction,
    p: u64,
    q: u64,
    n: Option<u64>,
    vector: &str,
    other: Option<&str>,
    format: Format,
) -> crate::Result<Outcome> {
    let (np, nq) = (Modulus::new(p)?, Modulus::new(q)?);
    if crate::arith::gcd(p, q) != 1 {
        return Err(Error::Domain(format!("{p} and {q} are not coprime")));
    }
    let pq = p
        .checked_mul(q)
        .ok_or_else(|| Error::Overflow(format!("{p}·{q}")))?;
    if let Some(n) = n.filter(|&n| n != pq) {
        return Err(Error::Domain(format!("{p}·{q} = {pq} is not {n}")));
    }
    let text = match direction {
        Direction::Split => {
            if other.is_some() {
                return Err(Error::Domain("split takes a single vector".into()));
            }
            let a = VectorModN::parse(&Modulus::new(pq)?, vector)?;
            let (x, y) = crt_split(&a, &np, &nq)?;
            match format {
                Format::Text => format!("{x} | {y}\n"),
                Format::Json => {
                    json!({"p": x.components(), "q": y.components()}).to_string() + "\n"
                }
            }
        }
        Direction::Join => {
            let other = other
                .ok_or_else(|| Error::Domain("join needs the residue over Z_q via -w".into()))?;
            let x = VectorModN::parse(&np, vector)?;
            let y = VectorModN::parse(&nq, other)?;
            let joined = crt_join(&x, &y)?;
            match format {
                Format::Text => format!("{joined}\n"),
                Format::Json => json!({ "joined": joined.components() }).to_string() + "\n",
            }
        }
    };
    Ok(Outcome::ok(text))
}
