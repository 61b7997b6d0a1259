//! Command line front end: root systems, gradings, fibrations, twistor
//! checks and the inner classification, in paper-style text or JSON.
//!
//! Exit status: 0 on success, 1 when a mathematical check reports a failure
//! (e.g. integrability fails), 2 on input errors.

mod render;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "lietwist",
    about = "Exact root-system computations: parabolic gradings, degree-3 fibrations, twistor integrability",
    version
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the JSON report to a file
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the roots of a simple system in canonical order
    #[command(name = "roots")]
    Roots { system: String },

    /// Validate a base: positive roots, coefficients, highest root
    #[command(name = "base")]
    Base {
        system: String,
        /// Simple roots as bracketed vectors, e.g. "[-3,1*r3],[2,0]" (default: catalog base)
        #[arg(long)]
        base: Option<String>,
    },

    /// Level decomposition g^r for a parabolic datum (B, A)
    #[command(name = "grade")]
    Grade {
        system: String,
        #[arg(long)]
        base: Option<String>,
        /// Subset A as 1-based indices: "2", "1,3" or "13"
        #[arg(long = "A")]
        subset: String,
    },

    /// Canonical series of the nilradical and comparison with the grading
    #[command(name = "series")]
    Series {
        system: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long = "A")]
        subset: String,
    },

    /// Degree-3 fibration: levels grouped mod 3
    #[command(name = "fib3")]
    Fib3 {
        system: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long = "A")]
        subset: String,
    },

    /// Degree-2 fibration: levels grouped by parity
    #[command(name = "fib2")]
    Fib2 {
        system: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long = "A")]
        subset: String,
    },

    /// Degree-3 fibration plus the full 3-symmetric bracket checks
    #[command(name = "check3sym")]
    Check3sym {
        system: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long = "A")]
        subset: String,
    },

    /// n⁺ cut out on m by the positive roots of a base
    #[command(name = "nplus")]
    Nplus {
        system: String,
        /// Roots of h (Cartan implied, closed under negation automatically)
        #[arg(long)]
        h: String,
        #[arg(long)]
        base: Option<String>,
    },

    /// Twistor integrability of a candidate n⁺ on the space with isotropy h
    #[command(name = "twistor-check")]
    TwistorCheck {
        system: String,
        #[arg(long)]
        h: String,
        /// Roots of n⁺ as bracketed vectors
        #[arg(long)]
        nplus: String,
    },

    /// Recover the parabolic of an integrable candidate, with fibre data
    #[command(name = "recover")]
    Recover {
        system: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        nplus: String,
    },

    /// Compare a recovered parabolic against the 3-symmetric structure of (B, A)
    #[command(name = "compat3")]
    Compat3 {
        system: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        nplus: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long = "A")]
        subset: String,
    },

    /// Highest-root twistor construction over a base
    #[command(name = "wolf")]
    Wolf {
        system: String,
        #[arg(long)]
        base: Option<String>,
    },

    /// Inner 3-symmetric cases of a simple system (catalog base)
    #[command(name = "classify")]
    Classify { system: String },

    /// Batch checks over subsets, candidates or types ("all" for the catalog)
    #[command(name = "sweep")]
    Sweep {
        system: String,
        /// Iterate over every subset A (including the empty one)
        #[arg(long)]
        all_subsets: bool,
        /// One of: series, fib3, fib2, wolf, equivalence (default: series+fib3+fib2)
        #[arg(long)]
        check: Option<String>,
        /// Isotropy roots for the equivalence check
        #[arg(long)]
        h: Option<String>,
        /// Rank guard for sweeps (default 4)
        #[arg(long)]
        max_rank: Option<usize>,
        /// Override the rank guard
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap());
            } else {
                print!("{}", outcome.text);
            }
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(
                    path,
                    serde_json::to_string_pretty(&outcome.json).unwrap(),
                ) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.finding {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
