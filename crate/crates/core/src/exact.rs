//! Adaptive exact sign evaluation for polynomial predicates over `f64` inputs.
//!
//! Every predicate in this crate is written once, generically over [`Scalar`],
//! and evaluated first with [`Filtered`] (plain floating point carrying a
//! running bound on its absolute error). Only when that bound cannot certify
//! the sign is the same expression re-evaluated with [`Dyadic`], an exact
//! big-integer-mantissa representation. Every finite `f64` is a dyadic
//! rational, and the ring operations are closed over dyadics, so the fallback
//! never rounds.
//!
//! The consequence the rest of the crate relies on: two algebraically equal
//! predicates always return the same answer, whatever form they are written
//! in. That is what lets the fast engines agree with the brute-force oracle
//! count for count, boundary cases included.

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};

/// A commutative ring over which predicates are evaluated.
pub(crate) trait Scalar:
    Sized + Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
}

/// Runs the filtered evaluation and falls back to the exact one when the
/// filter cannot decide.
#[inline]
pub(crate) fn sign_of(
    filtered: impl FnOnce() -> Filtered,
    exact: impl FnOnce() -> Dyadic,
) -> Ordering {
    match filtered().certain_sign() {
        Some(s) => s,
        None => exact().sign(),
    }
}

/// Evaluates `$body` (an expression generic in the type named `$s`) with the
/// floating-point filter, then exactly if needed, and yields its sign.
macro_rules! exact_sign {
    (|$s:ident| $body:expr) => {{
        $crate::exact::sign_of(
            || {
                #[allow(non_camel_case_types, dead_code)]
                type $s = $crate::exact::Filtered;
                $body
            },
            || {
                #[allow(non_camel_case_types, dead_code)]
                type $s = $crate::exact::Dyadic;
                $body
            },
        )
    }};
}
pub(crate) use exact_sign;

// 2^-52. Twice the unit roundoff, which leaves room for the rounding of the
// bound computation itself.
const EPS: f64 = f64::EPSILON;
const GROW: f64 = 1.0 + 4.0 * EPS;

/// A floating-point value with a bound on its distance from the exact value
/// of the expression that produced it.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Filtered {
    value: f64,
    err: f64,
}

impl Filtered {
    /// `Some(sign)` when the error bound proves it, `None` otherwise.
    #[inline]
    pub(crate) fn certain_sign(self) -> Option<Ordering> {
        if !(self.value.is_finite() && self.err.is_finite()) {
            return None;
        }
        if self.value > self.err {
            Some(Ordering::Greater)
        } else if -self.value > self.err {
            Some(Ordering::Less)
        } else if self.value == 0.0 && self.err == 0.0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl Scalar for Filtered {
    #[inline]
    fn from_f64(v: f64) -> Self {
        Filtered { value: v, err: 0.0 }
    }
}

impl Add for Filtered {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let value = self.value + rhs.value;
        let err = (self.err + rhs.err + EPS * value.abs()) * GROW;
        Filtered { value, err }
    }
}

impl Sub for Filtered {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let value = self.value - rhs.value;
        let err = (self.err + rhs.err + EPS * value.abs()) * GROW;
        Filtered { value, err }
    }
}

impl Mul for Filtered {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let value = self.value * rhs.value;
        // |xy - XY| <= |x|e_y + |y|e_x + e_x e_y, plus rounding and a floor
        // for products that land in the subnormal range.
        let err = (self.value.abs() * rhs.err
            + rhs.value.abs() * self.err
            + self.err * rhs.err
            + EPS * value.abs()
            + f64::MIN_POSITIVE)
            * GROW;
        Filtered { value, err }
    }
}

impl Neg for Filtered {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Filtered {
            value: -self.value,
            err: self.err,
        }
    }
}

/// An exact dyadic rational `mantissa * 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub(crate) fn sign(&self) -> Ordering {
        match self.mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    fn aligned(self, rhs: Self) -> (BigInt, BigInt, i64) {
        match self.exponent.cmp(&rhs.exponent) {
            Ordering::Equal => (self.mantissa, rhs.mantissa, self.exponent),
            Ordering::Greater => {
                let shift = (self.exponent - rhs.exponent) as usize;
                (self.mantissa << shift, rhs.mantissa, rhs.exponent)
            }
            Ordering::Less => {
                let shift = (rhs.exponent - self.exponent) as usize;
                (self.mantissa, rhs.mantissa << shift, self.exponent)
            }
        }
    }
}

impl Scalar for Dyadic {
    fn from_f64(v: f64) -> Self {
        debug_assert!(v.is_finite());
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (m, exponent) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let mantissa = if negative {
            -BigInt::from(m)
        } else {
            BigInt::from(m)
        };
        Dyadic { mantissa, exponent }
    }
}

impl Add for Dyadic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, exponent) = self.aligned(rhs);
        Dyadic {
            mantissa: a + b,
            exponent,
        }
    }
}

impl Sub for Dyadic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, exponent) = self.aligned(rhs);
        Dyadic {
            mantissa: a - b,
            exponent,
        }
    }
}

impl Mul for Dyadic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dyadic {
            mantissa: self.mantissa * rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Self;
    fn neg(self) -> Self {
        Dyadic {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

/// Error-free difference: returns `(hi, lo)` with `hi + lo == a - b` exactly
/// and `hi == fl(a - b)`.
#[inline]
pub(crate) fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let hi = a - b;
    let b_virtual = a - hi;
    let a_virtual = hi + b_virtual;
    let b_round = b_virtual - b;
    let a_round = a - a_virtual;
    (hi, a_round + b_round)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: f64) -> Dyadic {
        Dyadic::from_f64(v)
    }

    #[test]
    fn dyadic_detects_cancellation_the_filter_cannot() {
        // (1 + 2^-60) - 1 rounds to zero in f64 but not exactly.
        let tiny = libm::ldexp(1.0, -60);
        let exact = (d(1.0) + d(tiny)) - d(1.0);
        assert_eq!(exact.sign(), Ordering::Greater);
        assert_eq!(exact, d(tiny));
    }

    #[test]
    fn filtered_refuses_uncertain_signs() {
        let f = |v| Filtered::from_f64(v);
        let x = (f(0.1) * f(3.0)) - f(0.3);
        assert_eq!(x.certain_sign(), None);
        let y = f(2.0) * f(3.0) - f(5.0);
        assert_eq!(y.certain_sign(), Some(Ordering::Greater));
        let z = f(4.0) - f(4.0);
        assert_eq!(z.certain_sign(), Some(Ordering::Equal));
    }

    #[test]
    fn subnormals_and_signs_round_trip() {
        for v in [0.0, -0.0, 5e-324, -5e-324, 1.5, -2.25, 1e300, f64::MIN_POSITIVE] {
            let x = d(v);
            let expected = if v > 0.0 {
                Ordering::Greater
            } else if v < 0.0 {
                Ordering::Less
            } else {
                Ordering::Equal
            };
            assert_eq!(x.sign(), expected, "{v}");
        }
        assert_eq!((d(5e-324) * d(5e-324)).sign(), Ordering::Greater);
    }

    #[test]
    fn two_diff_is_error_free() {
        let (hi, lo) = two_diff(1.0, 1e-20);
        assert_eq!(hi, 1.0);
        assert_eq!(d(hi) + d(lo), d(1.0) - d(1e-20));
        let (hi, lo) = two_diff(3.5, 3.5);
        assert_eq!((hi, lo), (0.0, 0.0));
    }

    #[test]
    fn macro_evaluates_both_paths() {
        let s = exact_sign!(|S| S::from_f64(0.1) * S::from_f64(3.0) - S::from_f64(0.3));
        // 0.1 * 3 in binary is slightly above 0.3's binary value
        let exact = (d(0.1) * d(3.0) - d(0.3)).sign();
        assert_eq!(s, exact);
    }
}
