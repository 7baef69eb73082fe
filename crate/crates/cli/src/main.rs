//! `chialg`: command-line front end.
//!
//! Exit codes: 0 when every check is verified (or holds up to truncation),
//! 2 on a mismatch, 1 on usage or input errors.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "chialg", version, about = "Exact characteristic Lie algebras of u_xy = f(u)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complete (and optionally partial) Bell polynomials.
    Bell {
        /// Largest index.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Also print the partial polynomial B(n, k).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Characteristic algebra by bracket closure.
    Charalg {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, default_value_t = 8)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = NormalizationArg::Auto)]
        normalization: NormalizationArg,
        /// Include the jet coefficients of every basis element.
        #[arg(long)]
        fields: bool,
    },
    /// Matrix loop algebras and their structure constants.
    Loops {
        #[arg(long, value_enum)]
        algebra: LoopArg,
        /// Residue table of the structure constants.
        #[arg(long)]
        table: bool,
        /// Largest basis index listed.
        #[arg(long, default_value_t = 8)]
        max: i64,
    },
    /// Polynomial x-integrals up to a weight.
    Integrals {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long, default_value_t = 4)]
        weight: u32,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Defining equation of higher symmetries for a candidate.
    Symmetry {
        #[command(flatten)]
        eq: EquationArgs,
        /// Candidate polynomial in u1, u2, ...
        #[arg(long)]
        phi: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Compare the closure with the matrix loop algebra.
    VerifyIso {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long, default_value_t = 8)]
        degree: i64,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Second-order integral of a two-component exponential system.
    Exp2d {
        /// Entries a11,a12,a21,a22.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Growth functions of a characteristic or presented algebra.
    Growth {
        #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
        equation: Option<String>,
        /// Presented algebra: m0, m2, w+, n2^3, m0s:<odd degrees>.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 12)]
        degree: i64,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Jacobi identity of a presented algebra.
    Jacobi {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 20)]
        degree: i64,
    },
}

#[derive(Args, Debug)]
struct EquationArgs {
    /// Right-hand side: liouville, sinh, tzitzeica, or a sum such as "e^u + e^(-2u)".
    #[arg(long, allow_hyphen_values = true)]
    equation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Auto,
    Raw,
    SinhGordon,
    Tzitzeica,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LoopArg {
    Sl2,
    Sl3t,
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Bell { n, k } => commands::bell(n, k),
        Command::Charalg { eq, order, degree, normalization, fields } => {
            commands::charalg(&eq.equation, order, degree, normalization, fields)
        }
        Command::Loops { algebra, table, max } => commands::loops(algebra, table, max),
        Command::Integrals { eq, weight, order } => commands::integrals(&eq.equation, weight, order),
        Command::Symmetry { eq, phi, order } => commands::symmetry(&eq.equation, &phi, order),
        Command::VerifyIso { eq, degree, order } => commands::verify_iso(&eq.equation, degree, order),
        Command::Exp2d { matrix, order } => commands::exp2d(&matrix, order),
        Command::Growth { equation, algebra, degree, order } => {
            commands::growth(equation.as_deref(), algebra.as_deref(), degree, order)
        }
        Command::Jacobi { algebra, degree } => commands::jacobi(&algebra, degree),
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
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("chialg: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let bytes = match cli.output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render::text(&report),
    };
    let written = match &cli.output.out {
        Some(path) => std::fs::write(path, bytes.as_bytes()),
        None => std::io::stdout().write_all(bytes.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("chialg: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.status.exit_code())
}
