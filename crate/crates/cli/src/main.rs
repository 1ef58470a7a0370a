use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{run, CliError};

/// Exact identity testing for bounded top-fanin depth-4 circuits.
///
/// Exit codes: 0 ZERO, 1 NONZERO, 2 usage or parse error, 3 resource limit
/// or INDETERMINATE. Tool commands exit 0 on success.
#[derive(Parser, Debug)]
#[command(name = "pit4", version)]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Decide product membership through subsets of at most this many
    /// factors.
    #[arg(long, global = true)]
    pub fmax: Option<usize>,
    /// Largest number of monomials an expansion may hold.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Cross-check every verdict against a full expansion.
    #[arg(long, global = true)]
    pub strict_oracle: bool,
    /// Radicand d of the coefficient field Q(√d) when a file has no `ext=`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub ext: Option<i64>,
    /// Seed for `gen` and `corpus`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Auto,
    Pit31,
    Pit32,
    General,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Zero,
    Perturbed,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test a circuit with the most specific pipeline that applies.
    Pit {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ShapeArg::Auto)]
        shape: ShapeArg,
    },
    /// Three terms of linear factors.
    Pit31 { file: PathBuf },
    /// Three terms, one of which holds a quadratic factor.
    Pit32 { file: PathBuf },
    /// Full expansion.
    Oracle { file: PathBuf },
    /// Check the SG condition on the normalized circuit.
    Sgcheck { file: PathBuf },
    /// Transcendence degree of a polynomial list.
    Trdeg { file: PathBuf },
    /// Is a product of factors in the ideal of the generators?
    Member { file: PathBuf },
    /// Gram rank of every quadratic in a polynomial list.
    Quadrank { file: PathBuf },
    /// Colored point configurations.
    Incidence {
        #[command(subcommand)]
        op: IncidenceOp,
    },
    /// Write a seeded circuit.
    Gen {
        #[arg(long, value_enum, default_value_t = GenKind::Zero)]
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        nvars: usize,
        /// Top fanin; zero circuits pick any template when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Largest factor degree of random circuits.
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Term degree of random circuits.
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Zero template name.
        #[arg(long)]
        template: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a seeded batch with an oracle cross-check.
    Corpus {
        #[arg(long, default_value_t = 200)]
        zero: usize,
        #[arg(long, default_value_t = 100)]
        perturbed: usize,
        #[arg(long, default_value_t = 250)]
        random: usize,
        /// Write every entry report to this file.
        #[arg(long)]
        reports: Option<PathBuf>,
        /// Also collect and check membership certificates.
        #[arg(long)]
        certify: bool,
    },
    /// Homogenize a circuit with one extra variable.
    Homogenize { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum IncidenceOp {
    /// First line meeting exactly two of the sets.
    FindTwoSets { file: PathBuf },
    /// First line through exactly two of all the points.
    FindOrdinary { file: PathBuf },
    /// Dimension of the span of all points.
    Span { file: PathBuf },
    /// Configuration of a circuit's linear factors.
    FromCircuit { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("pit4: {e}");
            ExitCode::from(match e {
                CliError::Resource(_) => 3,
                _ => 2,
            })
        }
    }
}
