//! Inclusive prefix scans over an associative operation.
//!
//! The engine uses a blocked reduce-then-scan: every block of `block_size`
//! elements is folded to a total, the totals are folded into per-block
//! offsets, and each block is then scanned sequentially starting from its
//! offset. Work is `O(n)`; depth is `O(n / p + n / block_size)` on `p` workers.
//!
//! The combination order depends only on `(n, block_size)`. Workers just pick
//! up whole blocks, so outputs are bit-identical for every `worker_count`, even
//! for floating-point operations that are only associative up to rounding.

use std::num::NonZeroUsize;
use std::thread;

use crate::error::{Error, Result};
use crate::signedlog::{sl_add, SignedLog};

pub const DEFAULT_BLOCK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanEngine {
    worker_count: usize,
    block_size: usize,
}

impl ScanEngine {
    pub fn new(worker_count: usize, block_size: usize) -> Result<Self> {
        if worker_count == 0 {
            return Err(Error::InvalidArgument("worker_count must be >= 1".into()));
        }
        if block_size == 0 {
            return Err(Error::InvalidArgument("block_size must be >= 1".into()));
        }
        Ok(ScanEngine {
            worker_count,
            block_size,
        })
    }

    /// One worker, default block size.
    pub fn sequential() -> Self {
        ScanEngine {
            worker_count: 1,
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }

    /// Default block size with the given number of workers.
    pub fn with_workers(worker_count: usize) -> Result<Self> {
        Self::new(worker_count, DEFAULT_BLOCK_SIZE)
    }

    pub fn worker_count(&self) -> usize {
        self.worker_count
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Runs `f(chunk_index, chunk)` over `data` split into `chunk_len` pieces,
    /// handing each worker a contiguous run of chunks.
    fn for_each_chunk<T, F>(&self, data: &mut [T], chunk_len: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync,
    {
        let mut chunks: Vec<(usize, &mut [T])> = data.chunks_mut(chunk_len).enumerate().collect();
        let workers = self.worker_count.min(chunks.len());
        if workers <= 1 {
            for (i, chunk) in chunks {
                f(i, chunk);
            }
            return;
        }
        let per_worker = chunks.len().div_ceil(workers);
        let f = &f;
        thread::scope(|s| {
            let mut groups = chunks.chunks_mut(per_worker);
            let local = groups.next();
            for group in groups {
                s.spawn(move || {
                    for (i, chunk) in group.iter_mut() {
                        f(*i, chunk);
                    }
                });
            }
            if let Some(group) = local {
                for (i, chunk) in group.iter_mut() {
                    f(*i, chunk);
                }
            }
        });
    }

    /// Elementwise `out[i] = f(i)`, in parallel.
    pub(crate) fn fill<U, F>(&self, out: &mut [U], f: F)
    where
        U: Send,
        F: Fn(usize) -> U + Sync,
    {
        let bs = self.block_size;
        self.for_each_chunk(out, bs, |b, block| {
            let base = b * bs;
            for (j, slot) in block.iter_mut().enumerate() {
                *slot = f(base + j);
            }
        });
    }

    /// The scan behind every public entry point. Element `i` of the input is
    /// produced on demand by `elem(i)` (twice: once for the block totals and
    /// once for the final pass), and `out[i] = emit(i, prefix_i)`, so callers
    /// can fuse input construction and output mapping into the scan.
    pub(crate) fn scan_with<T, U, G, F, M>(&self, out: &mut [U], elem: G, op: F, emit: M)
    where
        T: Copy + Send + Sync,
        U: Send,
        G: Fn(usize) -> T + Sync,
        F: Fn(T, T) -> T + Sync,
        M: Fn(usize, T) -> U + Sync,
    {
        let n = out.len();
        if n == 0 {
            return;
        }
        let bs = self.block_size;
        let n_blocks = n.div_ceil(bs);

        // The last block's total is never needed.
        let fold_block = |k: usize| {
            let base = k * bs;
            let mut acc = elem(base);
            for i in base + 1..base + bs {
                acc = op(acc, elem(i));
            }
            acc
        };
        let mut totals: Vec<Option<T>> = vec![None; n_blocks - 1];
        let per_worker = totals.len().div_ceil(self.worker_count).max(1);
        self.for_each_chunk(&mut totals, per_worker, |c, slots| {
            for (j, slot) in slots.iter_mut().enumerate() {
                *slot = Some(fold_block(c * per_worker + j));
            }
        });

        // offsets[k] folds blocks 0..k and seeds block k.
        let mut offsets: Vec<Option<T>> = Vec::with_capacity(n_blocks);
        offsets.push(None);
        let mut acc: Option<T> = None;
        for total in totals.into_iter().map(|t| t.expect("filled above")) {
            let next = match acc {
                Some(a) => op(a, total),
                None => total,
            };
            acc = Some(next);
            offsets.push(acc);
        }

        // Combining the offset with the block-local prefix (rather than
        // seeding the fold with it) makes the last output of block k equal
        // offsets[k + 1] bit for bit.
        self.for_each_chunk(out, bs, |k, block| {
            let base = k * bs;
            let mut local = elem(base);
            let at = |local: T| match offsets[k] {
                Some(off) => op(off, local),
                None => local,
            };
            block[0] = emit(base, at(local));
            for (j, slot) in block.iter_mut().enumerate().skip(1) {
                local = op(local, elem(base + j));
                *slot = emit(base + j, at(local));
            }
        });
    }
}

impl Default for ScanEngine {
    /// Default block size, one worker per available hardware thread.
    fn default() -> Self {
        let workers = thread::available_parallelism()
            .map(NonZeroUsize::get)
            .unwrap_or(1);
        ScanEngine {
            worker_count: workers,
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }
}

/// `ys[0] = xs[0]`, `ys[i] = op(ys[i-1], xs[i])`, grouped into blocks as
/// described in the module docs. `op` must be associative; its first argument
/// is always the earlier operand.
pub fn inclusive_scan<T, F>(xs: &[T], op: F, engine: &ScanEngine) -> Vec<T>
where
    T: Copy + Send + Sync,
    F: Fn(T, T) -> T + Sync,
{
    let mut out = xs.to_vec();
    engine.scan_with(&mut out, |i| xs[i], op, |_, v| v);
    out
}

pub fn cumsum(xs: &[f64], engine: &ScanEngine) -> Vec<f64> {
    inclusive_scan(xs, |a, b| a + b, engine)
}

pub fn cumprod(xs: &[f64], engine: &ScanEngine) -> Vec<f64> {
    inclusive_scan(xs, |a, b| a * b, engine)
}

/// `ln(e^a + e^b)` without overflow. Two `-inf` operands give `-inf`.
#[inline]
pub fn lse(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ys[i] = ln(sum_{k <= i} e^{xs[k]})`. `-inf` entries carry zero mass; `+inf`
/// and NaN are rejected.
pub fn log_cum_sum_exp(xs: &[f64], engine: &ScanEngine) -> Result<Vec<f64>> {
    if let Some((index, &value)) = xs
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_nan() || **v == f64::INFINITY)
    {
        return Err(Error::InvalidLogValue { index, value });
    }
    Ok(inclusive_scan(xs, lse, engine))
}

/// Running sums of signed-log values, staying in log space.
pub fn signed_log_cum_sum_exp(xs: &[SignedLog], engine: &ScanEngine) -> Vec<SignedLog> {
    inclusive_scan(xs, sl_add, engine)
}
