use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use racah_core::analyzer::Generator;
use racah_core::{BasisKind, ParamTriple, Rat};

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    s.parse::<Rat>().map_err(|e| e.to_string())
}

fn parse_basis(s: &str) -> Result<BasisKind, String> {
    s.parse()
}

#[derive(Parser, Debug)]
#[command(
    name = "racah",
    version,
    about = "Exact computations with the Racah algebra modules R_d(a, b, c)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. Defaults to json, except for `reduce`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub a: Rat,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub b: Rat,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub c: Rat,
    /// The module has dimension d + 1.
    #[arg(long, allow_hyphen_values = true)]
    pub d: u32,
}

impl Params {
    pub fn triple(&self) -> ParamTriple {
        ParamTriple::new(self.a.clone(), self.b.clone(), self.c.clone())
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the matrices of A, B, C, D.
    Construct {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "v", value_parser = parse_basis)]
        basis: BasisKind,
    },
    /// Check every defining relation on a built or imported module.
    Verify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat, required_unless_present = "input")]
        a: Option<Rat>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat, required_unless_present = "input")]
        b: Option<Rat>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat, required_unless_present = "input")]
        c: Option<Rat>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "input")]
        d: Option<u32>,
        #[arg(long, default_value = "v", value_parser = parse_basis)]
        basis: BasisKind,
        /// Module document as written by `construct`.
        #[arg(long, conflicts_with_all = ["a", "b", "c", "d"])]
        input: Option<PathBuf>,
    },
    /// Irreducibility, diagonalizability, traces, identification.
    Analyze {
        #[command(flatten)]
        params: Params,
    },
    /// Analyze every point of a grid such as `a=-1/2,0;b=0..1:1/2;c=1;d=1,2`.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Intertwiners from R_d(a, b, c) to R_d(a2, b2, c2).
    Intertwine {
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        a2: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        b2: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        c2: Rat,
        #[arg(long, default_value = "v", value_parser = parse_basis)]
        basis: BasisKind,
        #[arg(long, default_value = "v", value_parser = parse_basis)]
        basis2: BasisKind,
    },
    /// Normal-order an expression in A, B, C, D, alpha, beta, gamma, delta.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Evaluate an expression on a module.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "v", value_parser = parse_basis)]
        basis: BasisKind,
        /// Compute alpha, beta, gamma, delta from the matrices instead of
        /// substituting their scalars.
        #[arg(long)]
        central_matrices: bool,
    },
    /// Checks on a finite truncation of the infinite-dimensional module.
    Verma {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        a: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        b: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        c: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        nu: Rat,
        /// Dimension parameter for the checks; defaults to nu when nu is a
        /// nonnegative integer.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<u32>,
        /// Largest basis index kept; defaults to d + 10.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Reproduce the five-dimensional example at a = b = c = -1/2, d = 4.
    Golden {
        /// Flip the sign of the B superdiagonal before comparing (negative control).
        #[arg(long, hide = true)]
        negate_varphi: bool,
    },
    /// Print the defining quadratics and parameter candidates for matrices
    /// read from a module document.
    Identify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Diagonalizability of one generator.
    Diagonalizable {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_parser = |s: &str| s.parse::<Generator>())]
        generator: Generator,
        /// Use the minimal-polynomial oracle; required off the irreducible locus.
        #[arg(long)]
        oracle: bool,
    },
}
