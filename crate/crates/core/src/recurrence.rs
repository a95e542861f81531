//! Solvers for `x_t = a_t * x_{t-1} + b_t`, `t = 1..=n`.
//!
//! Expanding the recurrence and factoring out the trailing coefficients gives
//!
//! ```text
//! x_t = cumprod(a)_t * (x0 + cumsum(b / cumprod(a))_t)
//! ```
//!
//! and, taking logs,
//!
//! ```text
//! ln x_t = a*_t + ln(x0 + b*_t)
//! a*_t   = cumsum(ln a)_t
//! b*_t   = cumsum(exp(ln b - a*))_t
//! ```
//!
//! [`solve_logspace`] evaluates the second form as
//! `exp(a* + tail(lcse(cat(ln x0, ln b - a*))))` with signed logarithms, so
//! negative coefficients and a zero `x0` need no special casing.
//! [`solve_pairscan`] scans affine [`Carry`] pairs instead and also accepts
//! zero coefficients.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scan::{cumprod, cumsum, signed_log_cum_sum_exp, ScanEngine};
use crate::signedlog::{sl_add, sl_mul, SignedLog};

/// Elements smaller than this fraction of the largest output magnitude are
/// flagged as cancellation-heavy by the log-space solver.
pub const CANCELLATION_THRESHOLD: f64 = 1e-8;

/// Coefficients `a_t`, inputs `b_t` and the initial value `x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    a: Vec<f64>,
    b: Vec<f64>,
    x0: f64,
}

impl CoefficientSeries {
    pub fn new(a: Vec<f64>, b: Vec<f64>, x0: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if let Some(&value) = a.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "coefficient a",
                value,
            });
        }
        if let Some(&value) = b.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "input b",
                value,
            });
        }
        if !x0.is_finite() {
            return Err(Error::NonFinite {
                what: "initial value x0",
                value: x0,
            });
        }
        Ok(CoefficientSeries { a, b, x0 })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn with_x0(mut self, x0: f64) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::NonFinite {
                what: "initial value x0",
                value: x0,
            });
        }
        self.x0 = x0;
        Ok(self)
    }

    /// Steps `range` of this series, keeping `x0`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> CoefficientSeries {
        CoefficientSeries {
            a: self.a[range.clone()].to_vec(),
            b: self.b[range].to_vec(),
            x0: self.x0,
        }
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>, f64) {
        (self.a, self.b, self.x0)
    }

    fn first_zero_coefficient(&self) -> Option<usize> {
        self.a.iter().position(|&v| v == 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolveMethod {
    Sequential,
    Direct,
    Logspace,
    Pairscan,
}

impl SolveMethod {
    pub const ALL: [SolveMethod; 4] = [
        SolveMethod::Sequential,
        SolveMethod::Direct,
        SolveMethod::Logspace,
        SolveMethod::Pairscan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Sequential => "sequential",
            SolveMethod::Direct => "direct",
            SolveMethod::Logspace => "logspace",
            SolveMethod::Pairscan => "pairscan",
        }
    }

    /// Largest normalized relative deviation from [`solve_sequential`] the
    /// method is expected to reach on its supported inputs.
    pub fn tolerance(self) -> f64 {
        match self {
            SolveMethod::Sequential => 0.0,
            SolveMethod::Direct => 1e-9,
            SolveMethod::Logspace => 1e-6,
            SolveMethod::Pairscan => 1e-10,
        }
    }
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolveMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown solve method `{s}`")))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Flags {
    /// Some element overflowed f64 and was saturated to `±inf`.
    pub overflow_saturated: bool,
    /// Indices whose magnitude fell below [`CANCELLATION_THRESHOLD`] times the
    /// largest output magnitude (log-space solver only).
    pub cancellation_heavy: Vec<usize>,
}

impl Flags {
    pub fn is_empty(&self) -> bool {
        !self.overflow_saturated && self.cancellation_heavy.is_empty()
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.overflow_saturated {
            names.push("overflow-saturated");
        }
        if !self.cancellation_heavy.is_empty() {
            names.push("cancellation-heavy");
        }
        names
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub x: Vec<f64>,
    pub method: SolveMethod,
    pub flags: Flags,
}

impl SolveResult {
    fn new(x: Vec<f64>, method: SolveMethod) -> Self {
        let flags = Flags {
            overflow_saturated: x.iter().any(|v| !v.is_finite()),
            cancellation_heavy: Vec::new(),
        };
        SolveResult { x, method, flags }
    }
}

/// The affine map `x -> a * x + b` summarizing one or more steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Carry {
    pub a: f64,
    pub b: f64,
}

impl Carry {
    pub const IDENTITY: Carry = Carry { a: 1.0, b: 0.0 };

    pub fn new(a: f64, b: f64) -> Self {
        Carry { a, b }
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        self.a * x + self.b
    }
}

impl Default for Carry {
    fn default() -> Self {
        Carry::IDENTITY
    }
}

/// `first` followed by `then`: `x -> then.a * (first.a * x + first.b) + then.b`.
#[inline]
pub fn compose_carries(first: Carry, then: Carry) -> Carry {
    Carry {
        a: then.a * first.a,
        b: then.a * first.b + then.b,
    }
}

/// Composition of every step of `s`; `x0` is ignored.
pub fn chunk_carry(s: &CoefficientSeries) -> Carry {
    s.a.iter()
        .zip(&s.b)
        .fold(Carry::IDENTITY, |acc, (&a, &b)| {
            compose_carries(acc, Carry { a, b })
        })
}

/// `|estimate - exact| / max(|exact|, 1)`. Matching infinities count as exact.
pub fn normalized_relative_error(estimate: f64, exact: f64) -> f64 {
    if estimate == exact {
        return 0.0;
    }
    (estimate - exact).abs() / exact.abs().max(1.0)
}

/// One element at a time. Ground truth for the other solvers.
pub fn solve_sequential(s: &CoefficientSeries) -> SolveResult {
    let mut x = Vec::with_capacity(s.len());
    let mut prev = s.x0;
    for (&a, &b) in s.a.iter().zip(&s.b) {
        prev = a * prev + b;
        x.push(prev);
    }
    SolveResult::new(x, SolveMethod::Sequential)
}

/// `cumprod(a) * (x0 + cumsum(b / cumprod(a)))`.
///
/// Fails on a zero coefficient, and when the cumulative product or the
/// rescaled partial sums leave the normal f64 range.
pub fn solve_direct(s: &CoefficientSeries, engine: &ScanEngine) -> Result<SolveResult> {
    if let Some(index) = s.first_zero_coefficient() {
        return Err(Error::ZeroCoefficient { index });
    }
    let prod = cumprod(&s.a, engine);
    if let Some(index) = prod
        .iter()
        .position(|p| !(p.is_finite() && p.abs() >= f64::MIN_POSITIVE))
    {
        return Err(Error::ProductOutOfRange { index });
    }
    let mut scaled = vec![0.0; s.len()];
    engine.fill(&mut scaled, |i| s.b[i] / prod[i]);
    let sums = cumsum(&scaled, engine);
    if let Some(index) = sums.iter().position(|v| !v.is_finite()) {
        return Err(Error::ProductOutOfRange { index });
    }
    let mut x = vec![0.0; s.len()];
    engine.fill(&mut x, |i| prod[i] * (s.x0 + sums[i]));
    Ok(SolveResult::new(x, SolveMethod::Direct))
}

/// Intermediates of [`solve_logspace_traced`], all in signed-log form.
#[derive(Debug, Clone, PartialEq)]
pub struct LogspaceTrace {
    /// `a*_t`: running product of `a`, i.e. `cumsum(ln a)` plus a sign.
    pub a_star: Vec<SignedLog>,
    /// `ln b_t - a*_t`.
    pub log_terms: Vec<SignedLog>,
    /// `ln(x0 + b*_t)`, the tail of the concatenated scan.
    pub log_x0_plus_b_star: Vec<SignedLog>,
    /// `b*_t = cumsum(exp(ln b - a*))`, scanned separately without `x0`.
    pub b_star: Vec<SignedLog>,
}

/// Two prefix sums in signed log space: `exp(a* + tail(lcse(cat(ln x0, ln b - a*))))`.
///
/// Zero coefficients are rejected. Overflowing elements saturate and set
/// `overflow_saturated`; elements that cancel down to a tiny fraction of the
/// largest output are listed in `cancellation_heavy`.
pub fn solve_logspace(s: &CoefficientSeries, engine: &ScanEngine) -> Result<SolveResult> {
    logspace(s, engine, false).map(|(r, _)| r)
}

pub fn solve_logspace_traced(
    s: &CoefficientSeries,
    engine: &ScanEngine,
) -> Result<(SolveResult, LogspaceTrace)> {
    logspace(s, engine, true).map(|(r, t)| (r, t.expect("trace requested")))
}

fn logspace(
    s: &CoefficientSeries,
    engine: &ScanEngine,
    trace: bool,
) -> Result<(SolveResult, Option<LogspaceTrace>)> {
    if let Some(index) = s.first_zero_coefficient() {
        return Err(Error::ZeroCoefficient { index });
    }
    let n = s.len();
    let mut a_star = vec![SignedLog::ZERO; n];
    engine.scan_with(&mut a_star, |i| SignedLog::from_finite(s.a[i]), sl_mul, |_, v| v);

    // cat(ln x0, ln b - a*), built on demand inside the scan.
    let cat = |i: usize| {
        if i == 0 {
            SignedLog::from_finite(s.x0)
        } else {
            SignedLog::from_finite(s.b[i - 1])
                .checked_div(a_star[i - 1])
                .expect("a* is nonzero when every a_t is nonzero")
        }
    };
    let mut scanned = vec![SignedLog::ZERO; n + 1];
    engine.scan_with(&mut scanned, cat, sl_add, |_, v| v);
    let tail = &scanned[1..];

    let mut x = vec![0.0; n];
    engine.fill(&mut x, |i| sl_mul(a_star[i], tail[i]).to_real_saturating());

    let mut result = SolveResult::new(x, SolveMethod::Logspace);
    result.flags.cancellation_heavy = cancellation_indices(&result.x);

    let log_terms: Option<Vec<SignedLog>> = trace.then(|| (1..=n).map(cat).collect());
    let trace = log_terms.map(|log_terms| {
        let b_star = signed_log_cum_sum_exp(&log_terms, engine);
        LogspaceTrace {
            a_star,
            log_terms,
            log_x0_plus_b_star: tail.to_vec(),
            b_star,
        }
    });
    Ok((result, trace))
}

fn cancellation_indices(x: &[f64]) -> Vec<usize> {
    let peak = x
        .iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = CANCELLATION_THRESHOLD * peak;
    x.iter()
        .enumerate()
        .filter(|(_, v)| v.abs() < floor)
        .map(|(i, _)| i)
        .collect()
}

/// Inclusive scan of per-step carries, then `x_t = A_t * x0 + B_t`.
/// Accepts zero and negative coefficients.
pub fn solve_pairscan(s: &CoefficientSeries, engine: &ScanEngine) -> SolveResult {
    let mut x = vec![0.0; s.len()];
    engine.scan_with(
        &mut x,
        |i| Carry::new(s.a[i], s.b[i]),
        compose_carries,
        |_, prefix| prefix.apply(s.x0),
    );
    SolveResult::new(x, SolveMethod::Pairscan)
}

pub fn solve(s: &CoefficientSeries, method: SolveMethod, engine: &ScanEngine) -> Result<SolveResult> {
    match method {
        SolveMethod::Sequential => Ok(solve_sequential(s)),
        SolveMethod::Direct => solve_direct(s, engine),
        SolveMethod::Logspace => solve_logspace(s, engine),
        SolveMethod::Pairscan => Ok(solve_pairscan(s, engine)),
    }
}

/// Solves consecutive fragments of one series. Each fragment starts from the
/// value obtained by pushing `x0` through the carries of all earlier
/// fragments. Fragment `x0` fields are ignored.
pub fn solve_chunked(
    chunks: &[CoefficientSeries],
    x0: f64,
    method: SolveMethod,
    engine: &ScanEngine,
) -> Result<SolveResult> {
    if !x0.is_finite() {
        return Err(Error::NonFinite {
            what: "initial value x0",
            value: x0,
        });
    }
    let fragment_err = |fragment: usize, e: Error| Error::Fragment {
        fragment,
        source: Box::new(e),
    };

    let mut x = Vec::with_capacity(chunks.iter().map(CoefficientSeries::len).sum());
    let mut flags = Flags::default();
    let mut start = x0;
    for (k, chunk) in chunks.iter().enumerate() {
        if chunk.is_empty() {
            return Err(fragment_err(
                k,
                Error::InvalidArgument("empty fragment".into()),
            ));
        }
        let seeded = chunk.clone().with_x0(start).map_err(|e| fragment_err(k, e))?;
        let part = solve(&seeded, method, engine).map_err(|e| fragment_err(k, e))?;
        flags.overflow_saturated |= part.flags.overflow_saturated;
        x.extend_from_slice(&part.x);
        start = chunk_carry(chunk).apply(start);
    }
    if method == SolveMethod::Logspace {
        flags.cancellation_heavy = cancellation_indices(&x);
    }
    Ok(SolveResult { x, method, flags })
}

/// `x_t` evaluated straight from the expanded product/sum form,
/// `prod_{k<=t} a_k * (x0 + sum_{k<=t} b_k / prod_{j<=k} a_j)`, recomputing every
/// product from scratch. Quadratic in `t`; meant as an independent check.
pub fn expand_element(s: &CoefficientSeries, t: usize) -> Result<f64> {
    let n = s.len();
    if t == 0 || t > n {
        return Err(Error::IndexOutOfRange { t, n });
    }
    if let Some(index) = s.a[..t].iter().position(|&v| v == 0.0) {
        return Err(Error::ZeroCoefficient { index });
    }
    let prefix_product = |k: usize| s.a[..k].iter().product::<f64>();
    let mut inner = s.x0;
    for k in 1..=t {
        inner += s.b[k - 1] / prefix_product(k);
    }
    Ok(prefix_product(t) * inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn series(a: &[f64], b: &[f64], x0: f64) -> CoefficientSeries {
        CoefficientSeries::new(a.to_vec(), b.to_vec(), x0).unwrap()
    }

    fn engines() -> [ScanEngine; 3] {
        [
            ScanEngine::sequential(),
            ScanEngine::new(2, 1).unwrap(),
            ScanEngine::new(3, 2).unwrap(),
        ]
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (i, (g, w)) in got.iter().zip(want).enumerate() {
            let err = normalized_relative_error(*g, *w);
            assert!(err <= tol, "index {i}: {g} vs {w} (err {err:e})");
        }
    }

    const HAND: ([f64; 3], [f64; 3], f64) = ([2.0, 0.5, 3.0], [1.0, -1.0, 2.0], 1.0);

    #[test]
    fn series_validation() {
        assert_eq!(
            CoefficientSeries::new(vec![1.0], vec![], 0.0),
            Err(Error::LengthMismatch { a: 1, b: 0 })
        );
        assert!(CoefficientSeries::new(vec![f64::NAN], vec![0.0], 0.0).is_err());
        assert!(CoefficientSeries::new(vec![1.0], vec![f64::INFINITY], 0.0).is_err());
        assert!(CoefficientSeries::new(vec![], vec![], f64::NAN).is_err());
        assert!(CoefficientSeries::new(vec![], vec![], 0.0).unwrap().is_empty());
    }

    #[test]
    fn method_parse_round_trip() {
        for m in SolveMethod::ALL {
            assert_eq!(m.to_string().parse::<SolveMethod>().unwrap(), m);
        }
        assert!("blelloch".parse::<SolveMethod>().is_err());
    }

    #[test]
    fn sequential_examples() {
        assert_eq!(solve_sequential(&series(&[1.0; 3], &[0.0; 3], 7.0)).x, [7.0; 3]);
        assert_eq!(solve_sequential(&series(&[0.0; 2], &[5.0, 6.0], 9.0)).x, [5.0, 6.0]);
        let (a, b, x0) = HAND;
        assert_eq!(solve_sequential(&series(&a, &b, x0)).x, [3.0, 0.5, 3.5]);
    }

    #[test]
    fn sequential_flags_overflow() {
        let r = solve_sequential(&series(&[1e300, 1e300], &[0.0, 0.0], 1e10));
        assert!(r.flags.overflow_saturated);
    }

    #[test]
    fn direct_examples() {
        let (a, b, x0) = HAND;
        for e in engines() {
            let r = solve_direct(&series(&[1.0; 3], &[1.0; 3], 0.0), &e).unwrap();
            assert_eq!(r.x, [1.0, 2.0, 3.0]);
            let r = solve_direct(&series(&[2.0; 3], &[0.0; 3], 1.0), &e).unwrap();
            assert_eq!(r.x, [2.0, 4.0, 8.0]);
            let r = solve_direct(&series(&a, &b, x0), &e).unwrap();
            assert_close(&r.x, &solve_sequential(&series(&a, &b, x0)).x, 1e-15);
            assert_eq!(r.method, SolveMethod::Direct);
        }
    }

    #[test]
    fn direct_rejects_zero_and_underflow() {
        let e = ScanEngine::sequential();
        let err = solve_direct(&series(&[1.0, 0.0, 0.0], &[1.0; 3], 0.0), &e).unwrap_err();
        assert_eq!(err, Error::ZeroCoefficient { index: 1 });
        assert!(err.is_unsupported_input());

        let tiny = vec![1e-200; 3];
        let err = solve_direct(&series(&tiny, &[1.0; 3], 0.0), &e).unwrap_err();
        assert_eq!(err, Error::ProductOutOfRange { index: 1 });
    }

    #[test]
    fn logspace_examples() {
        for e in engines() {
            let r = solve_logspace(&series(&[E; 3], &[0.0; 3], 1.0), &e).unwrap();
            assert_close(&r.x, &[E, E * E, E * E * E], 1e-14);

            let r = solve_logspace(&series(&[0.5; 3], &[1.0; 3], 0.0), &e).unwrap();
            let closed: Vec<f64> = (1..=3).map(|t| 2.0 - 2f64.powi(1 - t)).collect();
            assert_close(&r.x, &closed, 1e-14);

            let s = series(&[-1.0, -1.0], &[1.0, 1.0], 0.0);
            let r = solve_logspace(&s, &e).unwrap();
            assert_eq!(solve_sequential(&s).x, [1.0, 0.0]);
            assert_close(&r.x, &[1.0, 0.0], 1e-15);
            assert_eq!(r.x[1], 0.0);
        }
    }

    #[test]
    fn logspace_rejects_zero() {
        let err = solve_logspace(&series(&[0.0], &[1.0], 0.0), &ScanEngine::sequential());
        assert_eq!(err, Err(Error::ZeroCoefficient { index: 0 }));
    }

    #[test]
    fn logspace_saturates_on_overflow() {
        let s = series(&[1e200, 1e200], &[0.0, 0.0], -1.0);
        let r = solve_logspace(&s, &ScanEngine::sequential()).unwrap();
        assert!(r.flags.overflow_saturated);
        assert_eq!(r.x[1], f64::NEG_INFINITY);
        assert!(normalized_relative_error(r.x[0], -1e200) < 1e-12);
    }

    #[test]
    fn logspace_flags_cancellation() {
        // x1 = 1, x2 = 1e-12 * 1 ... tiny relative to the peak.
        let s = series(&[1.0, 1.0], &[1.0, -(1.0 - 1e-12)], 0.0);
        let r = solve_logspace(&s, &ScanEngine::sequential()).unwrap();
        assert_eq!(r.flags.cancellation_heavy, vec![1]);
        assert_eq!(r.flags.names(), ["cancellation-heavy"]);
    }

    #[test]
    fn trace_exposes_intermediates() {
        let s = series(&[2.0, 0.5], &[1.0, -1.0], 1.0);
        let (r, t) = solve_logspace_traced(&s, &ScanEngine::sequential()).unwrap();
        assert_eq!(t.a_star.len(), 2);
        assert!((t.a_star[1].to_real().unwrap() - 1.0).abs() < 1e-15);
        // b* = [1/2, 1/2 - 1/1] = [0.5, -0.5]
        let b_star: Vec<f64> = t.b_star.iter().map(|v| v.to_real().unwrap()).collect();
        assert_close(&b_star, &[0.5, -0.5], 1e-15);
        assert_close(&r.x, &[3.0, 0.5], 1e-15);
    }

    #[test]
    fn pairscan_examples() {
        let (a, b, x0) = HAND;
        for e in engines() {
            assert_eq!(solve_pairscan(&series(&[0.0; 2], &[5.0, 6.0], 9.0), &e).x, [5.0, 6.0]);
            assert_eq!(solve_pairscan(&series(&[1.0; 3], &[0.0; 3], 7.0), &e).x, [7.0; 3]);
            let r = solve_pairscan(&series(&a, &b, x0), &e);
            assert_close(&r.x, &[3.0, 0.5, 3.5], 1e-15);
        }
    }

    #[test]
    fn compose_examples() {
        let c = Carry::new(3.5, -2.25);
        assert_eq!(compose_carries(Carry::IDENTITY, c), c);
        assert_eq!(compose_carries(c, Carry::IDENTITY), c);
        assert_eq!(
            compose_carries(Carry::new(2.0, 1.0), Carry::new(3.0, 4.0)),
            Carry::new(6.0, 7.0)
        );
        assert_eq!(
            compose_carries(Carry::new(0.0, 5.0), Carry::new(2.0, 0.0)),
            Carry::new(0.0, 10.0)
        );
    }

    #[test]
    fn chunk_carry_examples() {
        assert_eq!(chunk_carry(&series(&[], &[], 4.0)), Carry::IDENTITY);
        assert_eq!(chunk_carry(&series(&[2.0], &[3.0], 4.0)), Carry::new(2.0, 3.0));
        let (a, b, _) = HAND;
        let c = chunk_carry(&series(&a, &b, 9.0));
        // x0 = 0 folds 1, -0.5, 0.5; applying the carry to x0 = 1 gives 3.5.
        assert_eq!(c, Carry::new(3.0, 0.5));
        assert_eq!(c.b, *solve_sequential(&series(&a, &b, 0.0)).x.last().unwrap());
        assert_eq!(c.apply(1.0), *solve_sequential(&series(&a, &b, 1.0)).x.last().unwrap());
    }

    #[test]
    fn chunked_examples() {
        let (a, b, x0) = HAND;
        let whole = series(&a, &b, x0);
        let e = ScanEngine::sequential();
        for m in SolveMethod::ALL {
            let one = solve_chunked(std::slice::from_ref(&whole), x0, m, &e).unwrap();
            assert_eq!(one.x, solve(&whole, m, &e).unwrap().x);

            let parts = [whole.slice(0..1), whole.slice(1..3)];
            let r = solve_chunked(&parts, x0, m, &e).unwrap();
            assert_close(&r.x, &[3.0, 0.5, 3.5], 1e-15);
        }
    }

    #[test]
    fn chunked_reports_fragment_index() {
        let e = ScanEngine::sequential();
        let parts = [series(&[1.0], &[1.0], 0.0), series(&[0.0], &[1.0], 0.0)];
        let err = solve_chunked(&parts, 0.0, SolveMethod::Direct, &e).unwrap_err();
        assert!(matches!(err, Error::Fragment { fragment: 1, .. }));
        assert!(err.is_unsupported_input());

        let parts = [series(&[1.0], &[1.0], 0.0), series(&[], &[], 0.0)];
        let err = solve_chunked(&parts, 0.0, SolveMethod::Pairscan, &e).unwrap_err();
        assert!(matches!(err, Error::Fragment { fragment: 1, .. }));
    }

    #[test]
    fn expand_element_examples() {
        assert_eq!(expand_element(&series(&[2.0], &[1.0], 1.0), 1).unwrap(), 3.0);
        let s = series(&[2.0, 0.5], &[1.0, -1.0], 1.0);
        assert_eq!(expand_element(&s, 2).unwrap(), 0.5);
        assert_eq!(expand_element(&series(&[1.0; 3], &[1.0; 3], 0.0), 3).unwrap(), 3.0);
    }

    #[test]
    fn expand_element_errors() {
        let s = series(&[2.0, 0.0], &[1.0, 1.0], 1.0);
        assert_eq!(expand_element(&s, 0), Err(Error::IndexOutOfRange { t: 0, n: 2 }));
        assert_eq!(expand_element(&s, 3), Err(Error::IndexOutOfRange { t: 3, n: 2 }));
        assert_eq!(expand_element(&s, 2), Err(Error::ZeroCoefficient { index: 1 }));
        assert_eq!(expand_element(&s, 1).unwrap(), 3.0);
    }

    #[test]
    fn empty_series_solves_to_empty() {
        let s = series(&[], &[], 1.0);
        let e = ScanEngine::sequential();
        for m in SolveMethod::ALL {
            assert!(solve(&s, m, &e).unwrap().x.is_empty());
        }
    }

    #[test]
    fn normalized_error_definition() {
        assert_eq!(normalized_relative_error(1.5, 1.0), 0.5);
        assert_eq!(normalized_relative_error(201.0, 200.0), 0.005);
        assert_eq!(normalized_relative_error(f64::INFINITY, f64::INFINITY), 0.0);
    }
}
