//! The p-adic valuation and norm on ℤ and ℚ.
//!
//! The plain functions are total and return `0` at zero, so `padic_val_int(p, 0) == 0`
//! and `padic_val_rat(p, 0) == 0`. Code that needs to tell zero apart from a unit uses
//! [`ext_val_rat`], which reports zero as [`ExtVal::ExactZero`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::prime::Prime;

/// An extended valuation: a finite exponent, `+∞` for an exact zero, or a lower bound
/// for a value only known to vanish modulo `p^A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtVal {
    Finite(i64),
    ExactZero,
    ZeroAtLeast(i64),
}

impl ExtVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtVal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// The exact norm `p^(-v)`, `0` for an exact zero, `None` when unknown.
    pub fn norm(self, p: Prime) -> Option<BigRational> {
        match self {
            ExtVal::Finite(v) => Some(prime_power_rat(p, -v)),
            ExtVal::ExactZero => Some(BigRational::zero()),
            ExtVal::ZeroAtLeast(_) => None,
        }
    }

    /// An upper bound on the norm; exact except for `ZeroAtLeast(A)`, where it is `p^(-A)`.
    pub fn norm_upper_bound(self, p: Prime) -> BigRational {
        match self {
            ExtVal::ZeroAtLeast(a) => prime_power_rat(p, -a),
            other => other.norm(p).expect("known norm"),
        }
    }
}

/// Orders by what is certain: `ExactZero` is above every finite value, and
/// `ZeroAtLeast(A)` is above `Finite(v)` only when `v < A`.
impl PartialOrd for ExtVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtVal::*;
        match (*self, *other) {
            (Finite(a), Finite(b)) => Some(a.cmp(&b)),
            (ExactZero, ExactZero) => Some(Ordering::Equal),
            (ExactZero, Finite(_)) => Some(Ordering::Greater),
            (Finite(_), ExactZero) => Some(Ordering::Less),
            (ZeroAtLeast(a), Finite(v)) if v < a => Some(Ordering::Greater),
            (Finite(v), ZeroAtLeast(a)) if v < a => Some(Ordering::Less),
            (ZeroAtLeast(a), ZeroAtLeast(b)) if a == b => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for ExtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtVal::Finite(v) => write!(f, "{v}"),
            ExtVal::ExactZero => write!(f, "inf"),
            ExtVal::ZeroAtLeast(a) => write!(f, ">={a}"),
        }
    }
}

/// `p^k` as a rational, for any sign of `k`.
pub fn prime_power_rat(p: Prime, k: i64) -> BigRational {
    let mag = p.pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Strips every factor of `p` from a nonzero `z`, returning `(ν_p(z), z / p^ν)`.
pub(crate) fn split_power(p: Prime, z: &BigInt) -> (u64, BigInt) {
    debug_assert!(!z.is_zero());
    let pb = p.to_bigint();
    let mut v = 0;
    let mut rest = z.clone();
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

/// Largest `k` with `p^k | z`; `0` when `z = 0`.
pub fn padic_val_int(p: Prime, z: &BigInt) -> u64 {
    if z.is_zero() {
        0
    } else {
        split_power(p, z).0
    }
}

/// `ν_p(num) - ν_p(den)` of the reduced fraction; `0` when `q = 0`.
pub fn padic_val_rat(p: Prime, q: &BigRational) -> i64 {
    // BigRational keeps itself reduced with a positive denominator.
    padic_val_int(p, q.numer()) as i64 - padic_val_int(p, q.denom()) as i64
}

/// `|q|_p`: `0` at zero, otherwise `p^(-ν_p(q))`.
pub fn padic_norm_rat(p: Prime, q: &BigRational) -> BigRational {
    if q.is_zero() {
        BigRational::zero()
    } else {
        prime_power_rat(p, -padic_val_rat(p, q))
    }
}

pub fn ext_val_rat(p: Prime, q: &BigRational) -> ExtVal {
    if q.is_zero() {
        ExtVal::ExactZero
    } else {
        ExtVal::Finite(padic_val_rat(p, q))
    }
}
