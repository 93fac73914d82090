mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Independence systems and matroids from matrices over finite local rings.
#[derive(Parser, Debug)]
#[command(name = "chainmat", version)]
pub struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Use the naive reference implementations where one exists.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Override the ring named in matrix files.
    #[arg(long, global = true, value_name = "SPEC")]
    pub ring: Option<String>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct MatrixArg {
    /// Matrix file.
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct SubsetArg {
    /// Matrix file.
    pub file: PathBuf,
    /// Comma-separated column labels.
    #[arg(short = 'X', value_name = "LABELS", allow_hyphen_values = true, default_value = "")]
    pub x: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the independent sets of M[A].
    Indep(MatrixArg),
    /// List the circuits of M[A].
    Circuits(MatrixArg),
    /// Rank of a column set.
    Rank(SubsetArg),
    /// Test the matroid axioms; exits 1 with a witness when they fail.
    CheckMatroid(MatrixArg),
    /// Generator matrix of the dual code.
    DualCode(MatrixArg),
    /// The dual independence system of M[A].
    DualSystem(MatrixArg),
    /// Generator matrix of the punctured code C^X.
    Puncture(SubsetArg),
    /// Generator matrix of the shortened code C_X.
    Shorten(SubsetArg),
    /// Whether the code is contractible at a coordinate.
    Contractible {
        file: PathBuf,
        #[arg(short = 'e', value_name = "LABEL")]
        e: String,
    },
    /// Shorten by X along a contractible ordering.
    Contract(SubsetArg),
    /// M[A] \ D / C.
    Minor {
        file: PathBuf,
        #[arg(long, value_name = "LABELS", default_value = "")]
        delete: String,
        #[arg(long, value_name = "LABELS", default_value = "")]
        contract: String,
    },
    /// Smith normal form P A Q = D.
    Snf(MatrixArg),
    /// Systematic form of a free code.
    Systematic(MatrixArg),
    /// Rank-2 uniform representation from the projective line.
    Uniform {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Size bounds for simple representations in R^k.
    Bound {
        #[arg(short = 'k')]
        k: u32,
    },
    /// Number of cyclic submodules of type s in a module of the given shape.
    Counting {
        /// Multiplicities k_0,k_1,... of the summands.
        #[arg(long, value_name = "K0,K1,...")]
        shape: String,
        #[arg(short = 's')]
        s: u32,
    },
    /// Verify gallery entries.
    VerifyGallery {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// Isomorphism test between two matroids given by matrices.
    Iso { a: PathBuf, b: PathBuf },
    /// A random matrix over the ring given by --ring.
    Random {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'n')]
        n: usize,
        /// Generate a free code in systematic position.
        #[arg(long)]
        free: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json"))
            } else {
                write!(stdout, "{}", out.text)
            };
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
