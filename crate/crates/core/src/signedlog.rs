//! Real numbers stored as a sign and a natural-log magnitude.
//!
//! Taking logarithms of negative coefficients would normally leave the reals.
//! Carrying the sign separately keeps every intermediate real-valued: the
//! product of two values multiplies signs and adds magnitudes, and the sum of
//! two values is a signed log-sum-exp. Zero is a first-class value with sign
//! `0` and magnitude `-inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};

/// `sign * exp(logmag)`, with `sign` in `{-1, 0, 1}`.
///
/// Invariant: `sign == 0` if and only if `logmag == -inf`. `logmag` is never
/// NaN or `+inf`.
#[derive(Clone, Copy, PartialEq)]
pub struct SignedLog {
    sign: i8,
    logmag: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };

    pub const ONE: SignedLog = SignedLog {
        sign: 1,
        logmag: 0.0,
    };

    /// Builds a value from its parts. A zero sign or a `-inf` magnitude both
    /// yield the canonical zero.
    pub fn new(sign: i8, logmag: f64) -> Result<Self> {
        if !(-1..=1).contains(&sign) {
            return Err(Error::InvalidArgument(format!(
                "sign must be -1, 0 or 1, got {sign}"
            )));
        }
        if logmag.is_nan() || logmag == f64::INFINITY {
            return Err(Error::NonFinite {
                what: "log-magnitude",
                value: logmag,
            });
        }
        Ok(Self::canonical(sign, logmag))
    }

    #[inline]
    fn canonical(sign: i8, logmag: f64) -> Self {
        if sign == 0 || logmag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            SignedLog { sign, logmag }
        }
    }

    pub fn from_real(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                what: "real operand",
                value: x,
            });
        }
        Ok(Self::from_finite(x))
    }

    /// `from_real` for callers that have already validated finiteness.
    #[inline]
    pub(crate) fn from_finite(x: f64) -> Self {
        debug_assert!(x.is_finite());
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLog {
                sign: if x > 0.0 { 1 } else { -1 },
                logmag: x.abs().ln(),
            }
        }
    }

    /// The represented real. Fails instead of returning `±inf` when the
    /// magnitude does not fit in an f64.
    pub fn to_real(self) -> Result<f64> {
        let v = self.to_real_saturating();
        if v.is_infinite() {
            Err(Error::Overflow {
                logmag: self.logmag,
            })
        } else {
            Ok(v)
        }
    }

    /// The represented real, saturating to `±inf` on overflow.
    #[inline]
    pub fn to_real_saturating(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.logmag.exp(),
        }
    }

    #[inline]
    pub fn sign(self) -> i8 {
        self.sign
    }

    #[inline]
    pub fn logmag(self) -> f64 {
        self.logmag
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// `self / rhs`. Division by zero is an error.
    pub fn checked_div(self, rhs: SignedLog) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::InvalidArgument("division by signed-log zero".into()));
        }
        Ok(Self::canonical(self.sign * rhs.sign, self.logmag - rhs.logmag))
    }
}

impl Default for SignedLog {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for SignedLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedLog({:+}, {})", self.sign, self.logmag)
    }
}

/// Product in log space: signs multiply, magnitudes add.
#[inline]
pub fn sl_mul(p: SignedLog, q: SignedLog) -> SignedLog {
    if p.is_zero() || q.is_zero() {
        return SignedLog::ZERO;
    }
    SignedLog {
        sign: p.sign * q.sign,
        logmag: p.logmag + q.logmag,
    }
}

/// Sum in log space.
///
/// With `M = max(logmag)` and `d = min - M <= 0`, equal signs give
/// `M + ln(1 + e^d)` and opposite signs give `M + ln(1 - e^d)` carrying the sign
/// of the larger operand. Exact cancellation returns the canonical zero.
/// Near-total cancellation is not rescued with extra precision.
#[inline]
pub fn sl_add(p: SignedLog, q: SignedLog) -> SignedLog {
    if p.is_zero() {
        return q;
    }
    if q.is_zero() {
        return p;
    }
    let (big, small) = match p.logmag.partial_cmp(&q.logmag) {
        Some(Ordering::Less) => (q, p),
        _ => (p, q),
    };
    let d = small.logmag - big.logmag;
    if big.sign == small.sign {
        SignedLog {
            sign: big.sign,
            logmag: big.logmag + d.exp().ln_1p(),
        }
    } else if d == 0.0 {
        SignedLog::ZERO
    } else {
        SignedLog {
            sign: big.sign,
            logmag: big.logmag + log1m_exp(d),
        }
    }
}

/// `ln(1 - e^d)` for `d < 0`, switching formulas at `-ln 2` so neither branch
/// loses precision.
#[inline]
fn log1m_exp(d: f64) -> f64 {
    if d > -std::f64::consts::LN_2 {
        (-d.exp_m1()).ln()
    } else {
        (-d.exp()).ln_1p()
    }
}

impl Mul for SignedLog {
    type Output = SignedLog;
    fn mul(self, rhs: SignedLog) -> SignedLog {
        sl_mul(self, rhs)
    }
}

impl Add for SignedLog {
    type Output = SignedLog;
    fn add(self, rhs: SignedLog) -> SignedLog {
        sl_add(self, rhs)
    }
}

impl Neg for SignedLog {
    type Output = SignedLog;
    fn neg(self) -> SignedLog {
        SignedLog {
            sign: -self.sign,
            logmag: self.logmag,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sl(sign: i8, logmag: f64) -> SignedLog {
        SignedLog::new(sign, logmag).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn from_real_examples() {
        assert_eq!(SignedLog::from_real(1.0).unwrap(), sl(1, 0.0));
        let z = SignedLog::from_real(0.0).unwrap();
        assert_eq!(z.sign(), 0);
        assert_eq!(z.logmag(), f64::NEG_INFINITY);
        let m2 = SignedLog::from_real(-2.0).unwrap();
        assert_eq!(m2.sign(), -1);
        assert!((m2.logmag() - 0.693147).abs() < 1e-6);
        assert_eq!(m2.to_real().unwrap(), -2.0);
    }

    #[test]
    fn negative_zero_is_canonical_zero() {
        assert_eq!(SignedLog::from_real(-0.0).unwrap(), SignedLog::ZERO);
    }

    #[test]
    fn from_real_rejects_non_finite() {
        for x in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(matches!(
                SignedLog::from_real(x),
                Err(Error::NonFinite { .. })
            ));
        }
    }

    #[test]
    fn new_validates_and_canonicalizes() {
        assert!(SignedLog::new(2, 0.0).is_err());
        assert!(SignedLog::new(1, f64::NAN).is_err());
        assert!(SignedLog::new(1, f64::INFINITY).is_err());
        assert_eq!(SignedLog::new(1, f64::NEG_INFINITY).unwrap(), SignedLog::ZERO);
        assert_eq!(SignedLog::new(0, 3.0).unwrap(), SignedLog::ZERO);
    }

    #[test]
    fn to_real_examples() {
        assert_eq!(sl(1, 0.0).to_real().unwrap(), 1.0);
        assert_eq!(SignedLog::ZERO.to_real().unwrap(), 0.0);
        let v = sl(-1, 3f64.ln()).to_real().unwrap();
        assert!(rel(v, -3.0) <= f64::EPSILON);
    }

    #[test]
    fn to_real_reports_overflow() {
        let big = sl(-1, 710.0);
        assert_eq!(big.to_real(), Err(Error::Overflow { logmag: 710.0 }));
        assert_eq!(big.to_real_saturating(), f64::NEG_INFINITY);
        assert!(sl(1, 709.0).to_real().is_ok());
    }

    #[test]
    fn mul_examples() {
        let p = sl_mul(sl(1, 2f64.ln()), sl(-1, 3f64.ln()));
        assert_eq!(p.sign(), -1);
        assert!(rel(p.to_real().unwrap(), -6.0) < 4.0 * f64::EPSILON);
        assert_eq!(sl_mul(SignedLog::ZERO, sl(-1, 5f64.ln())), SignedLog::ZERO);
        assert_eq!(sl_mul(SignedLog::ONE, SignedLog::ONE), SignedLog::ONE);
    }

    #[test]
    fn add_examples() {
        let two = sl_add(SignedLog::ONE, SignedLog::ONE);
        assert_eq!(two.sign(), 1);
        assert!((two.logmag() - 2f64.ln()).abs() <= f64::EPSILON);

        let l5 = 5f64.ln();
        assert_eq!(sl_add(sl(1, l5), sl(-1, l5)), SignedLog::ZERO);

        let r = sl_add(sl(1, 3f64.ln()), sl(-1, 0.0));
        assert_eq!(r.sign(), 1);
        assert!(rel(r.to_real().unwrap(), 2.0) < 4.0 * f64::EPSILON);
    }

    #[test]
    fn add_picks_sign_of_larger_operand() {
        let r = sl_add(sl(-1, 2.0), sl(1, 1.0));
        assert_eq!(r.sign(), -1);
        let expected = -(2f64.exp()) + 1f64.exp();
        assert!(rel(r.to_real().unwrap(), expected) < 1e-14);
    }

    #[test]
    fn div_and_neg() {
        let q = sl(1, 6f64.ln()).checked_div(sl(-1, 2f64.ln())).unwrap();
        assert!(rel(q.to_real().unwrap(), -3.0) < 4.0 * f64::EPSILON);
        assert!(SignedLog::ONE.checked_div(SignedLog::ZERO).is_err());
        assert_eq!(SignedLog::ZERO.checked_div(SignedLog::ONE).unwrap(), SignedLog::ZERO);
        assert_eq!((-SignedLog::ONE).sign(), -1);
        assert_eq!(-SignedLog::ZERO, SignedLog::ZERO);
    }

    fn nonzero_real() -> impl Strategy<Value = f64> {
        (any::<bool>(), -700.0f64..700.0).prop_map(|(neg, e)| {
            let v = e.exp();
            if neg {
                -v
            } else {
                v
            }
        })
    }

    fn operand() -> impl Strategy<Value = SignedLog> {
        (prop_oneof![Just(-1i8), Just(1i8)], -300.0f64..300.0)
            .prop_map(|(s, l)| SignedLog::new(s, l).unwrap())
    }

    // An f64 log-magnitude is quantized to ulp(|ln x|), so the round trip and
    // the product carry |ln x| ulps of value error on top of the final rounding.
    fn ulp_budget(logmag: f64, base: f64) -> f64 {
        (base + logmag.abs()) * f64::EPSILON
    }

    proptest! {
        #[test]
        fn round_trip(x in nonzero_real()) {
            let s = SignedLog::from_real(x).unwrap();
            let back = s.to_real().unwrap();
            prop_assert!(rel(back, x) <= ulp_budget(s.logmag(), 1.0), "{x} -> {back}");
        }

        #[test]
        fn round_trip_within_one_ulp_near_unity(x in 0.5f64..2.0, neg in any::<bool>()) {
            let x = if neg { -x } else { x };
            let back = SignedLog::from_real(x).unwrap().to_real().unwrap();
            prop_assert!(rel(back, x) <= f64::EPSILON);
        }

        #[test]
        fn mul_is_homomorphic(p in operand(), q in operand()) {
            let lhs = sl_mul(p, q).to_real().unwrap();
            let rhs = p.to_real().unwrap() * q.to_real().unwrap();
            let budget = ulp_budget(p.logmag() + q.logmag(), 2.0);
            prop_assert!(rel(lhs, rhs) <= budget, "{lhs} vs {rhs}");
        }

        #[test]
        fn add_matches_real_sum(p in operand(), q in operand()) {
            let (pr, qr) = (p.to_real().unwrap(), q.to_real().unwrap());
            let exact = pr + qr;
            prop_assume!(exact.abs() >= 1e-6 * pr.abs().max(qr.abs()));
            let got = sl_add(p, q).to_real().unwrap();
            prop_assert!(rel(got, exact) <= 1e-12, "{got} vs {exact}");
        }

        #[test]
        fn add_and_mul_commute(p in operand(), q in operand()) {
            prop_assert_eq!(sl_add(p, q), sl_add(q, p));
            prop_assert_eq!(sl_mul(p, q), sl_mul(q, p));
        }

        #[test]
        fn mul_is_associative(p in operand(), q in operand(), r in operand()) {
            let lhs = sl_mul(sl_mul(p, q), r);
            let rhs = sl_mul(p, sl_mul(q, r));
            prop_assert_eq!(lhs.sign(), rhs.sign());
            let scale = p.logmag().abs() + q.logmag().abs() + r.logmag().abs();
            prop_assert!((lhs.logmag() - rhs.logmag()).abs() <= 2.0 * ulp_budget(scale, 0.0));
        }

        #[test]
        fn zero_is_identity_and_annihilator(p in operand()) {
            prop_assert_eq!(sl_add(p, SignedLog::ZERO), p);
            prop_assert_eq!(sl_add(SignedLog::ZERO, p), p);
            prop_assert_eq!(sl_mul(p, SignedLog::ZERO), SignedLog::ZERO);
            prop_assert_eq!(sl_mul(SignedLog::ZERO, p), SignedLog::ZERO);
        }
    }
}
