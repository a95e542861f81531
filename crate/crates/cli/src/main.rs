use std::fs::File;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use linrec::{ScanEngine, SolveMethod, DEFAULT_BLOCK_SIZE};
use linrec_cli::bench::DEFAULT_RUNS;
use linrec_cli::{
    cmd_bench, cmd_gen, cmd_solve, format_summary, summarize, write_bench_csv, BenchConfig,
    CliError, OutputFormat, Preset, SolveOptions,
};

#[derive(Parser)]
#[command(name = "linrec", version, about = "Solve x_t = a_t * x_(t-1) + b_t with parallel prefix sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct EngineArgs {
    /// Worker threads (default: LINREC_WORKERS, else all hardware threads).
    #[arg(long, env = "LINREC_WORKERS")]
    workers: Option<NonZeroUsize>,
    /// Elements per leaf block of the scan.
    #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
    block_size: usize,
}

impl EngineArgs {
    fn engine(&self) -> Result<ScanEngine, CliError> {
        let workers = match self.workers {
            Some(w) => w.get(),
            None => ScanEngine::default().worker_count(),
        };
        ScanEngine::new(workers, self.block_size).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a reproducible pseudo-random series file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "mixed-sign")]
        preset: Preset,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a series file and write x_t.
    Solve {
        input: PathBuf,
        #[arg(long, default_value = "pairscan")]
        method: SolveMethod,
        #[command(flatten)]
        engine: EngineArgs,
        /// Report the largest deviation from the sequential solver.
        #[arg(long)]
        check: bool,
        /// Output path; CSV goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv or bin.
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Time solvers over a grid of sizes and emit per-run CSV.
    Bench {
        /// Comma-separated problem sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize << 16, 1 << 18, 1 << 20, 1 << 22, 1 << 24])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        /// Comma-separated methods.
        #[arg(long, value_delimiter = ',', default_values_t = [SolveMethod::Sequential, SolveMethod::Pairscan])]
        methods: Vec<SolveMethod>,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "mixed-sign")]
        preset: Preset,
        /// CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { n, seed, preset, out } => {
            let s = cmd_gen(n, seed, preset, &out)?;
            eprintln!("wrote {} steps ({preset}, seed {seed}) to {}", s.len(), out.display());
        }
        Command::Solve { input, method, engine, check, out, format } => {
            let opts = SolveOptions { method, engine: engine.engine()?, check, format };
            let summary = match &out {
                Some(path) => cmd_solve(&input, &opts, File::create(path)?)?,
                None => cmd_solve(&input, &opts, io::stdout().lock())?,
            };
            eprintln!("{summary}");
        }
        Command::Bench { sizes, runs, methods, engine, seed, preset, out } => {
            let mut cfg = BenchConfig::new(sizes, methods, engine.engine()?);
            cfg.runs = runs;
            cfg.seed = seed;
            cfg.preset = preset;
            let records = cmd_bench(&cfg)?;
            match &out {
                Some(path) => write_bench_csv(&mut io::BufWriter::new(File::create(path)?), &records)?,
                None => write_bench_csv(&mut io::stdout().lock(), &records)?,
            }
            eprint!("{}", format_summary(&summarize(&records)));
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        let _ = io::stdout().flush();
        eprintln!("error: {e}");
        process::exit(e.exit_code() as i32);
    }
}
