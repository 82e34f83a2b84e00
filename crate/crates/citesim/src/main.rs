use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use citesim::cli::{self, FitPolicy, Overrides};

/// Monte Carlo laboratory for comparing regression strategies on
/// citation-like count data.
#[derive(Parser)]
#[command(name = "citesim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master seed for the random number streams.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo iterations per parameter set.
    #[arg(long, global = true)]
    iterations: Option<usize>,

    /// Significance level.
    #[arg(long, global = true)]
    alpha: Option<f64>,

    /// Worker thread count (output is identical for any value).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario preset (1-5) and write its CSV and SVG.
    Figure {
        /// Preset id: 1 null sigma=1, 2 null sigma=2, 3 effect 0.05,
        /// 4 effect 0.05 sigma=2, 5 effect 0.1.
        id: u8,
    },
    /// Run a sweep described by a JSON config file.
    Sweep {
        /// Path to the experiment config (JSON).
        config: PathBuf,
    },
    /// Fit the model battery to a real dataset (CSV: citations,factor).
    Fit {
        /// Path to the input data.
        data: PathBuf,
        /// Zero-handling policy: auto, truncate, plus1 or both.
        #[arg(long, default_value = "auto")]
        zero_policy: String,
    },
}

fn run(cli: Cli) -> citesim::Result<()> {
    let overrides = Overrides {
        seed: cli.seed,
        iterations: cli.iterations,
        alpha: cli.alpha,
        out_dir: Some(cli.out_dir.clone()),
    };
    match cli.command {
        Command::Figure { id } => {
            let files = cli::cmd_figure(id, &overrides)?;
            println!("wrote {}", files.csv.display());
            println!("wrote {}", files.svg.display());
        }
        Command::Sweep { config } => {
            let files = cli::cmd_sweep(&config, &overrides)?;
            println!("wrote {}", files.csv.display());
            println!("wrote {}", files.svg.display());
        }
        Command::Fit { data, zero_policy } => {
            let policy = FitPolicy::parse(&zero_policy).ok_or_else(|| {
                citesim::Error::Validation(vec![format!(
                    "zero_policy: {zero_policy:?} is not one of auto, truncate, plus1, both"
                )])
            })?;
            let alpha = cli.alpha.unwrap_or(0.05);
            let (report, path) = cli::cmd_fit(&data, alpha, policy, &cli.out_dir)?;
            print!("{}", cli::fit::render_fit_table(&report));
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let body = || match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool construction")
            .install(body),
        None => body(),
    }
}
