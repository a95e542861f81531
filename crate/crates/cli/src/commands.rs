use std::fmt;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use linrec::{normalized_relative_error, solve, solve_sequential, CoefficientSeries, Flags, ScanEngine, SolveMethod};

use crate::error::CliError;
use crate::generate::{generate, Preset};
use crate::series_file;

/// Magic for binary solution files: "LRES", u32 version 1, u64 n, x[n] as f64 LE.
pub const RESULT_MAGIC: &[u8; 4] = b"LRES";

pub fn cmd_gen(n: usize, seed: u64, preset: Preset, out: &Path) -> Result<CoefficientSeries, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let s = generate(n, seed, preset);
    series_file::save(out, &s)?;
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Binary,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "bin" | "binary" => Ok(OutputFormat::Binary),
            _ => Err(format!("unknown output format `{s}` (expected csv or bin)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: SolveMethod,
    pub engine: ScanEngine,
    /// Compare against the sequential solver in-process.
    pub check: bool,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveSummary {
    pub n: usize,
    pub method: SolveMethod,
    pub flags: Flags,
    /// Largest normalized relative deviation from the sequential solver,
    /// skipping cancellation-flagged elements. Only set with `check`.
    pub max_deviation: Option<f64>,
}

impl SolveSummary {
    pub fn within_tolerance(&self) -> Option<bool> {
        self.max_deviation.map(|d| d <= self.method.tolerance())
    }
}

impl fmt::Display for SolveSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} method={}", self.n, self.method)?;
        if let Some(d) = self.max_deviation {
            write!(
                f,
                " max_deviation={d:.3e} tolerance={:.0e}",
                self.method.tolerance()
            )?;
        }
        let names = self.flags.names();
        if names.is_empty() {
            write!(f, " flags=none")
        } else {
            write!(f, " flags={}", names.join(","))?;
            if !self.flags.cancellation_heavy.is_empty() {
                write!(f, " cancellation_heavy={}", self.flags.cancellation_heavy.len())?;
            }
            Ok(())
        }
    }
}

/// Loads `input`, solves it, and writes `x_t` to `out`.
pub fn cmd_solve<W: Write>(input: &Path, opts: &SolveOptions, out: W) -> Result<SolveSummary, CliError> {
    let series = series_file::load(input)?;
    let result = solve(&series, opts.method, &opts.engine)?;

    let max_deviation = opts.check.then(|| {
        let reference = solve_sequential(&series);
        let skip = &result.flags.cancellation_heavy;
        result
            .x
            .iter()
            .zip(&reference.x)
            .enumerate()
            .filter(|(i, _)| skip.binary_search(i).is_err())
            .map(|(_, (&got, &want))| normalized_relative_error(got, want))
            .fold(0.0f64, f64::max)
    });

    let mut w = BufWriter::new(out);
    match opts.format {
        OutputFormat::Csv => write_solution_csv(&mut w, &result.x)?,
        OutputFormat::Binary => write_solution_binary(&mut w, &result.x)?,
    }
    w.flush()?;

    Ok(SolveSummary {
        n: series.len(),
        method: result.method,
        flags: result.flags,
        max_deviation,
    })
}

/// `t,x` with `t` counted from 1 and 17 significant digits per value.
pub fn write_solution_csv<W: Write>(w: &mut W, x: &[f64]) -> std::io::Result<()> {
    writeln!(w, "t,x")?;
    for (i, v) in x.iter().enumerate() {
        writeln!(w, "{},{v:.16e}", i + 1)?;
    }
    Ok(())
}

pub fn write_solution_binary<W: Write>(w: &mut W, x: &[f64]) -> std::io::Result<()> {
    w.write_all(RESULT_MAGIC)?;
    w.write_all(&1u32.to_le_bytes())?;
    w.write_all(&(x.len() as u64).to_le_bytes())?;
    for v in x {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}
