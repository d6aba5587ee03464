use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact enumerative computations for first-order congruences of secant lines.
#[derive(Parser, Debug)]
#[command(name = "secant", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Schubert calculus on G(1,n).
    #[command(subcommand)]
    Schubert(SchubertCmd),
    /// Closed-form multiple-point and 4-secant formulas.
    #[command(subcommand)]
    Formulas(FormulaCmd),
    /// Build a random (or preset) congruence and print or save it.
    Construct(ConstructArgs),
    /// Exact checks on a saved congruence.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Pfaffian of the skew combination of a linear congruence.
    Pfaffian {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify catalog records (built-in catalog when no file is given).
    Classify {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        dim: Option<u32>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..))]
        multiplicity: i64,
    },
    /// Threefold invariants of degree D in P5 with one apparent quadruple point.
    Scan {
        #[arg(long)]
        d: i64,
        #[arg(long = "pi-max")]
        pi_max: i64,
        #[arg(long = "chi-max")]
        chi_max: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SchubertCmd {
    /// σ₁^ℓ on G(1,n).
    Pow {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, conflicts_with = "iterative")]
        closed: bool,
        #[arg(long)]
        iterative: bool,
    },
    /// Multidegree and Plücker degree of a general linear congruence.
    Lincong {
        #[arg(long)]
        n: u32,
    },
    /// Plücker degree of a congruence with the given multidegree.
    Degree {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        multidegree: Vec<i64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ThreefoldArgs {
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub pi: i64,
    #[arg(long = "chiS")]
    pub chi_s: i64,
    #[arg(long = "chiX")]
    pub chi_x: i64,
}

#[derive(Args, Debug, Clone)]
pub struct SectionArgs {
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub pi: i64,
    /// χ(O_S) of the surface; `--chiS` is accepted too.
    #[arg(long, alias = "chiS")]
    pub chi: i64,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub pi: i64,
    #[arg(long, alias = "chiS")]
    pub chi: i64,
    #[arg(long = "K2")]
    pub k2: i64,
    #[arg(long)]
    pub scroll: bool,
    /// Evaluate the formula on the blow-up at a general point instead.
    #[arg(long)]
    pub blowup: bool,
}

#[derive(Subcommand, Debug)]
pub enum FormulaCmd {
    /// Apparent quadruple points q of a threefold in P5.
    Q(ThreefoldArgs),
    /// 4-secant lines through a general point of a surface in P4.
    H(SectionArgs),
    /// Degree a₁ of the 4-secant hypersurface.
    A1(SectionArgs),
    /// 4-secant lines a₂ of a space curve.
    A2 {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        pi: i64,
    },
    /// Residual of the constraint 4h = 1 + a₁.
    Residual(SectionArgs),
    /// Apparent triple points of a surface in P4.
    Triple(SurfaceArgs),
    /// K³ and H·K² of a threefold in P5.
    Double(ThreefoldArgs),
    /// Focal-locus invariants of the general congruence of a kind.
    FocalDegree {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Linear,
    Determinantal,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    TwistedCubic,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum, required_unless_present = "preset")]
    pub kind: Option<KindArg>,
    #[arg(long, required_unless_present = "preset")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "preset")]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = secant_core::exact::DEFAULT_BOUND, value_parser = clap::value_parser!(i64).range(1..))]
    pub bound: i64,
    /// Fixed explicit matrix instead of a random draw.
    #[arg(long, value_enum, conflicts_with_all = ["kind", "n", "seed"])]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Every non-focal probe point lies on exactly one line.
    Order(VerifyArgs),
    /// Gcd degree of the restricted minors on each probe line.
    Foci(VerifyArgs),
}

/// Outcome of a subcommand that ran to completion.
pub enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((text, outcome)) => {
            print!("{text}");
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("secant: {e}");
            ExitCode::from(2)
        }
    }
}
