//! Wall-clock benchmark of the solvers: sequential time relative to the
//! parallel solvers, per problem size.

use std::collections::BTreeMap;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use linrec::{solve, ScanEngine, SolveMethod};

use crate::error::CliError;
use crate::generate::{generate, Preset};

pub const DEFAULT_RUNS: usize = 30;
pub const WARMUP_RUNS: usize = 3;

pub const CSV_HEADER: &str = "method,n,run,wall_time_ns,worker_count";

/// One timed solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub method: SolveMethod,
    pub n: usize,
    /// 1-based.
    pub run: usize,
    pub wall_time_ns: u64,
    pub worker_count: usize,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub runs: usize,
    pub warmup: usize,
    pub methods: Vec<SolveMethod>,
    pub engine: ScanEngine,
    pub seed: u64,
    pub preset: Preset,
}

impl BenchConfig {
    pub fn new(sizes: Vec<usize>, methods: Vec<SolveMethod>, engine: ScanEngine) -> Self {
        BenchConfig {
            sizes,
            runs: DEFAULT_RUNS,
            warmup: WARMUP_RUNS,
            methods,
            engine,
            seed: 0,
            preset: Preset::MixedSign,
        }
    }
}

/// Runs every `(n, method)` pair: one generated series per size, `warmup`
/// untimed solves, then `runs` timed solves, strictly one after another.
/// Only the solve call is inside the timed region.
pub fn cmd_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, CliError> {
    if cfg.sizes.is_empty() || cfg.sizes.contains(&0) {
        return Err(CliError::Usage("sizes must be a non-empty list of positive integers".into()));
    }
    if cfg.runs == 0 {
        return Err(CliError::Usage("runs must be at least 1".into()));
    }
    if cfg.methods.is_empty() {
        return Err(CliError::Usage("at least one method is required".into()));
    }

    let mut records = Vec::with_capacity(cfg.sizes.len() * cfg.methods.len() * cfg.runs);
    for &n in &cfg.sizes {
        let series = generate(n, cfg.seed, cfg.preset);
        for &method in &cfg.methods {
            let worker_count = match method {
                SolveMethod::Sequential => 1,
                _ => cfg.engine.worker_count(),
            };
            for _ in 0..cfg.warmup {
                black_box(solve(&series, method, &cfg.engine)?);
            }
            for run in 1..=cfg.runs {
                let start = Instant::now();
                let result = solve(black_box(&series), method, &cfg.engine)?;
                let elapsed = start.elapsed();
                black_box(result);
                records.push(BenchRecord {
                    method,
                    n,
                    run,
                    wall_time_ns: u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX).max(1),
                    worker_count,
                });
            }
        }
    }
    Ok(records)
}

pub fn write_bench_csv<W: Write>(w: &mut W, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.method, r.n, r.run, r.wall_time_ns, r.worker_count
        )?;
    }
    Ok(())
}

/// Mean time of one method at one size, and how many times slower the
/// sequential solver was.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    pub method: SolveMethod,
    pub mean_ns: f64,
    /// `mean(sequential) / mean(method)`; `None` without sequential records.
    pub ratio: Option<f64>,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<RatioRow> {
    let mut totals: BTreeMap<(usize, SolveMethod), (f64, usize)> = BTreeMap::new();
    for r in records {
        let e = totals.entry((r.n, r.method)).or_insert((0.0, 0));
        e.0 += r.wall_time_ns as f64;
        e.1 += 1;
    }
    let means: BTreeMap<(usize, SolveMethod), f64> = totals
        .into_iter()
        .map(|(k, (sum, count))| (k, sum / count as f64))
        .collect();
    means
        .iter()
        .map(|(&(n, method), &mean_ns)| RatioRow {
            n,
            method,
            mean_ns,
            ratio: means
                .get(&(n, SolveMethod::Sequential))
                .map(|seq| seq / mean_ns),
        })
        .collect()
}

pub fn format_summary(rows: &[RatioRow]) -> String {
    let mut out = format!("{:>12}  {:<10}  {:>16}  {:>10}\n", "n", "method", "mean_ns", "seq/method");
    for r in rows {
        let ratio = r.ratio.map_or("-".to_string(), |v| format!("{v:.3}"));
        out.push_str(&format!(
            "{:>12}  {:<10}  {:>16.0}  {:>10}\n",
            r.n,
            r.method.as_str(),
            r.mean_ns,
            ratio
        ));
    }
    out
}

/// Spearman rank correlation; ties get their average rank.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "spearman needs paired samples");
    let rx = ranks(xs);
    let ry = ranks(ys);
    let n = xs.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    cov / (vx * vy).sqrt()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}
