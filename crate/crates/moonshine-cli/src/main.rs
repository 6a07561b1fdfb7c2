//! Binary entry point: argument parsing and dispatch.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use moonshine_cli::{load_data, runs, Config, Format};
use moonshine_core::precision::PrecisionContext;
use moonshine_core::thompson::MtOptions;

#[derive(Parser, Debug)]
#[command(
    name = "moonshine",
    about = "Weight one-half moonshine for the Thompson group: exact q-series, \
             traces of singular moduli, Rademacher sums, and supermodule decompositions."
)]
struct Cli {
    /// Decimal working precision for CM evaluation and linear solves.
    #[arg(long, global = true, default_value_t = 60)]
    digits: u32,

    /// Base Rademacher cutoff in units of k = c / 4N (doubled until two
    /// successive rounded values agree, capped at 100x this value).
    #[arg(long, global = true, default_value_t = 10_000)]
    cutoff: i64,

    /// Largest q-exponent printed by series commands.
    #[arg(long, global = true, default_value_t = 33)]
    trunc: i64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Directory holding the character table and class metadata
    /// (falls back to MOONSHINE_DATA_DIR, then to the embedded copies).
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,

    /// Worker threads for class-parallel computations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Fourier coefficients of F_3 = 2 f_3 + 248 theta.
    F3,
    /// One McKay--Thompson series, with per-coefficient route and residue.
    Mt { class: String },
    /// Twisted trace of singular moduli Tr_{N,D1}(T_N; D2).
    Trace {
        #[arg(long = "N")]
        level: u32,
        #[arg(long = "D1", allow_hyphen_values = true)]
        d1: i64,
        #[arg(long = "D2", allow_hyphen_values = true)]
        d2: i64,
    },
    /// Rademacher coefficient partial sum for Z_{N, psi_{N,v,h}}.
    Rademacher {
        #[arg(long = "N")]
        level: i64,
        #[arg(long)]
        v: i64,
        #[arg(long)]
        h: i64,
        #[arg(long)]
        n: i64,
    },
    /// Supermodule decompositions for all valid m up to --max-m, plus the
    /// discriminant-property report.
    Decompose {
        #[arg(long, default_value_t = 32)]
        max_m: i64,
    },
    /// Cross-route agreement matrix (series vs trace vs Rademacher, the
    /// Borcherds product, and Hurwitz class numbers).
    Crosscheck,
    /// Discriminant-property report only.
    VerifyDiscriminant {
        #[arg(long, default_value_t = 32)]
        max_m: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = PrecisionContext::new(cli.digits.max(30), 20);
    let data = match load_data(&cli.data_dir) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = Config {
        ctx,
        mt: MtOptions {
            ctx,
            base_k: cli.cutoff.max(4),
            max_k: cli.cutoff.max(4) * 100,
        },
        trunc: cli.trunc.max(4),
        format: cli.format,
        jobs: if cli.jobs == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            cli.jobs
        },
        data,
    };
    let result = match &cli.command {
        Command::F3 => runs::cmd_f3(&config),
        Command::Mt { class } => runs::cmd_mt(&config, class),
        Command::Trace { level, d1, d2 } => runs::cmd_trace(&config, *level, *d1, *d2),
        Command::Rademacher { level, v, h, n } => runs::cmd_rademacher(&config, *level, *v, *h, *n),
        Command::Decompose { max_m } => runs::cmd_decompose(&config, *max_m, true),
        Command::Crosscheck => runs::cmd_crosscheck(&config),
        Command::VerifyDiscriminant { max_m } => runs::cmd_decompose(&config, *max_m, false),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
