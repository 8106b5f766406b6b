//! `ordinarity`: constants, censuses, classification and oracle runs for
//! Artin-Schreier and superelliptic covers over small finite fields.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
//! 3 resource guard, 4 invariant violation (route mismatch or oracle
//! disagreement).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "ordinarity", version, about = "Ordinarity statistics for covers of the projective line over F_q")]
struct Cli {
    /// Worker threads for the parallel sweeps (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the report here instead of stdout. Relative paths resolve
    /// against $ORDINARITY_OUTPUT_DIR when it is set.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Limiting probabilities and Euler-product constants for one field.
    Constants {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u32,
        /// Truncate the Euler products at this place degree instead of
        /// choosing one from the error bound.
        #[arg(long)]
        truncation_degree: Option<u32>,
    },
    /// Exact per-m counts of covers and ordinary covers.
    Census {
        #[command(subcommand)]
        family: CensusFamily,
    },
    /// Genus, invariants and ordinarity of one cover file.
    Classify {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Point-count the cover, rebuild its L-polynomial and compare the
    /// p-rank with the combinatorial classification.
    Oracle {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Random superelliptic covers from a seeded stream, classified.
    Sample {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Largest total degree of prod f_i.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the point-count oracle on each sample.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact rank and kernel of the fractional-part matrix for prime n.
    VerifyKernel {
        #[arg(long)]
        n: u32,
    },
    /// Characteristic-2 constants for q = 2, 4, 8, 16, 32 next to the
    /// published six-digit values.
    ReportTable1,
}

#[derive(Subcommand, Debug)]
enum CensusFamily {
    /// Artin-Schreier covers y^p - y = f(x).
    As {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        bound: Bound,
        /// Use the family that may ramify at infinity.
        #[arg(long)]
        include_infinity: bool,
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
    },
    /// Superelliptic covers y^n = prod f_i^i.
    Se {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        bound: Bound,
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
        /// Emit the three Dirichlet-coefficient routes instead of the cover table.
        #[arg(long)]
        routes: bool,
    },
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
struct Bound {
    /// Largest m (number of branch points, weighted) to tabulate.
    #[arg(long)]
    max_m: Option<u32>,
    /// Tabulate every m with q^m < X.
    #[arg(long)]
    x_bound: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Analytic,
    Enumerate,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = commands::run(&cli.command, cli.format);
    match result {
        Ok(report) => {
            if let Err(e) = output::emit(&report, cli.format, cli.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if let Some(msg) = &report.failure {
                eprintln!("error: {msg}");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
