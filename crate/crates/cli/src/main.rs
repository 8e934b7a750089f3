//! `peakalg`: statistics, enriched maps, peak functions and peak algebras from
//! the command line.
//!
//! Exit status: 0 when every requested check passes, 1 on a failed check, 2 on
//! invalid input.

mod commands;
mod output;
mod verify;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use peakalg::perm_stats::Kind;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "peakalg", version, about = "Peak statistics and peak algebras in exact arithmetic")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Directory for cached structure tables.
    #[arg(long, global = true, env = "PEAKALG_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Permit sizes above n = 8 (type A) or n = 6 (type B).
    #[arg(long, global = true)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    A,
    B,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::A => Kind::A,
            KindArg::B => Kind::B,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Peak and descent sets of one window.
    Peaks {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// One flavor; all admissible flavors when omitted.
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Linear extensions of a poset file (one `a<b` relation per line).
    Extensions {
        #[arg(long)]
        file: PathBuf,
        /// Read a type B poset on ±[n] ∪ {0}.
        #[arg(long)]
        type_b: bool,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Census of enriched maps of one window.
    Census {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// prime, left or plusMinus (plusMinus for signed windows).
        #[arg(long, default_value = "prime")]
        alphabet: String,
        #[arg(long, short = 'k', default_value_t = 2)]
        k: usize,
    },
    /// Peak function expansions or rank reports.
    Qsym {
        #[arg(long)]
        n: usize,
        /// interior, left or typeB.
        #[arg(long, default_value = "interior")]
        flavor: String,
        /// Comma-separated peak set; omit for a rank report.
        #[arg(long, allow_hyphen_values = true)]
        peaks: Option<String>,
        #[arg(long, value_enum, default_value = "m")]
        basis: BasisArg,
    },
    /// Structure constants of a peak algebra.
    Structure {
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        n: usize,
        /// Group type; defaults to B for typeB and descentB, A otherwise.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Also check duality against convolution and audit every representative.
        #[arg(long)]
        check: bool,
    },
    /// Closure of class sums under convolution, optionally as an ideal.
    Closure {
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Sum over peak numbers instead of peak sets.
        #[arg(long)]
        numbers: bool,
        /// Check the span is a two-sided ideal of this flavor's span.
        #[arg(long)]
        ideal_in: Option<String>,
    },
    /// Enriched order polynomials by interior peak count.
    Orderpoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        peaks: Option<usize>,
    },
    /// Coefficients of ρ(x) and the multiplicativity check.
    Idempotents {
        #[arg(long)]
        n: usize,
    },
    /// Statistics whose class sums fail to close.
    Negatives {
        #[arg(long, default_value_t = 6)]
        n_max_a: usize,
        #[arg(long, default_value_t = 5)]
        n_max_b: usize,
    },
    /// Rerun every check up to the given sizes.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Type B bound; defaults to n-max - 1.
        #[arg(long)]
        n_max_b: Option<usize>,
        /// Alphabet size for census checks.
        #[arg(long, short = 'k', default_value_t = 2)]
        k: usize,
        /// Treat known gaps as failures.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    M,
    F,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<peakalg::Error> for Failure {
    fn from(e: peakalg::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn error_record(kind: &str, message: &str) {
    let record = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{record}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            error_record("usage", e.render().to_string().trim());
            return ExitCode::from(2);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            error_record("usage", &e.to_string());
            return ExitCode::from(2);
        }
    };
    match pool.install(|| commands::run(&cli)) {
        Ok(report) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = report.write(cli.global.format, &mut out).and_then(|_| out.flush()) {
                error_record("io", &e.to_string());
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            error_record(f.kind, &f.message);
            ExitCode::from(f.code)
        }
    }
}
