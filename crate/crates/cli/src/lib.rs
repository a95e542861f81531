//! Library side of the `linrec` command: the series file format, the seeded
//! generator, and the `gen` / `solve` / `bench` commands.

pub mod bench;
pub mod commands;
mod error;
pub mod generate;
pub mod series_file;

pub use bench::{cmd_bench, format_summary, spearman, summarize, write_bench_csv, BenchConfig, BenchRecord, RatioRow};
pub use commands::{cmd_gen, cmd_solve, OutputFormat, SolveOptions, SolveSummary};
pub use error::{CliError, ExitCode};
pub use generate::{generate, Preset};
