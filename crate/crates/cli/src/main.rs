//! permclass: substitution decompositions, geometric grid classes, class
//! enumeration, and generating functions from the command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

mod config;
mod output;
mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "permclass", version, about = "permutation class toolkit")]
pub struct Cli {
    /// Optional config file with the same keys as the flags (flags win)
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Write the machine-readable output here (PERMCLASS_OUT_DIR overrides
    /// the directory)
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Write counts tables as CSV instead of JSON
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for partitionable brute-force scans
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Substitution decomposition of a permutation
    Decompose { perm: String },
    /// Census of simple permutations by length
    Simples {
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        /// Cross-check the census against the factorial filter
        #[arg(long)]
        brute_force: bool,
        /// List the simple permutations as well
        #[arg(long)]
        list: bool,
    },
    /// Geometric grid class operations
    Geom {
        #[command(subcommand)]
        op: GeomOp,
    },
    /// Exact counts of a class expression
    Enumerate {
        spec: String,
        /// Maximum length (default 7; config key `n`)
        #[arg(long)]
        n: Option<usize>,
        /// List members as well as counts
        #[arg(long)]
        members: bool,
    },
    /// Fit a rational generating function to a counting series
    Fit {
        /// Comma-separated counts for lengths 1, 2, 3, …
        #[arg(long)]
        series: String,
        /// Denominator degree bound (default 3; config key `max_deg`)
        #[arg(long)]
        max_deg: Option<usize>,
        /// Treat the series as starting at length 0 instead
        #[arg(long)]
        from_zero: bool,
    },
    /// Basis of the substitution closure, up to a length
    ClosureBasis {
        spec: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// The simple framework of a permutation over the family P_B
    Frameworks {
        perm: String,
        /// Basis permutations of the property family, comma separated
        #[arg(long, default_value = "")]
        basis: String,
        /// Extend the family by first-component avoidance properties
        #[arg(long)]
        extended: bool,
    },
    /// Oscillation census at one length
    Oscillations {
        #[arg(long, default_value_t = 9)]
        n: usize,
    },
    /// A member of the increasing oscillating antichain
    Antichain {
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// One-shot report: counts, fit, growth, closure basis
    Report {
        spec: String,
        /// Maximum length (default 10; config key `n`)
        #[arg(long)]
        n: Option<usize>,
        /// Denominator degree bound (default 3; config key `max_deg`)
        #[arg(long)]
        max_deg: Option<usize>,
        #[arg(long, default_value_t = 6)]
        basis_len: usize,
    },
}

#[derive(Subcommand)]
pub enum GeomOp {
    /// Decode a word over the cell alphabet to a permutation
    Decode {
        #[command(flatten)]
        matrix: MatrixArg,
        word: String,
    },
    /// The lexicographically least encoding of a member
    Encode {
        #[command(flatten)]
        matrix: MatrixArg,
        perm: String,
    },
    /// Membership in Geom(M)
    Member {
        #[command(flatten)]
        matrix: MatrixArg,
        perm: String,
    },
    /// The certified encoding automaton
    Automaton {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Certification length (default 7; config key `cert_len`)
        #[arg(long)]
        cert_len: Option<usize>,
    },
}

#[derive(Args)]
pub struct MatrixArg {
    /// Matrix file: rows of -1/0/1 top to bottom, optional cols:/rows: signs
    #[arg(short, long)]
    pub matrix: std::path::PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
