//! First-order linear recurrences `x_t = a_t * x_{t-1} + b_t` computed with
//! prefix sums.
//!
//! Four solvers are provided and cross-check each other:
//!
//! | Solver | Route | Handles `a_t = 0` |
//! |--------|-------|-------------------|
//! | [`solve_sequential`] | one element at a time (ground truth) | yes |
//! | [`solve_direct`] | `cumprod(a) * (x0 + cumsum(b / cumprod(a)))` | no |
//! | [`solve_logspace`] | two prefix sums in signed log space | no |
//! | [`solve_pairscan`] | scan over affine [`Carry`] pairs | yes |
//!
//! All parallel work goes through a [`ScanEngine`], whose reduction tree is
//! fixed by `(n, block_size)` so results are bit-identical for any worker
//! count.
//!
//! ```
//! use linrec::{CoefficientSeries, ScanEngine, solve_logspace, solve_sequential};
//!
//! let s = CoefficientSeries::new(vec![2.0, 0.5, 3.0], vec![1.0, -1.0, 2.0], 1.0).unwrap();
//! let engine = ScanEngine::default();
//! let exact = solve_sequential(&s);
//! let fast = solve_logspace(&s, &engine).unwrap();
//! assert_eq!(exact.x, vec![3.0, 0.5, 3.5]);
//! for (p, q) in fast.x.iter().zip(&exact.x) {
//!     assert!((p - q).abs() < 1e-12);
//! }
//! ```

mod error;
pub mod recurrence;
pub mod scan;
pub mod signedlog;

pub use error::{Error, Result};
pub use recurrence::{
    chunk_carry, compose_carries, expand_element, normalized_relative_error, solve,
    solve_chunked, solve_direct, solve_logspace, solve_logspace_traced, solve_pairscan,
    solve_sequential, Carry, CoefficientSeries, Flags, LogspaceTrace, SolveMethod, SolveResult,
};
pub use scan::{
    cumprod, cumsum, inclusive_scan, log_cum_sum_exp, lse, signed_log_cum_sum_exp, ScanEngine,
    DEFAULT_BLOCK_SIZE,
};
pub use signedlog::{sl_add, sl_mul, SignedLog};
