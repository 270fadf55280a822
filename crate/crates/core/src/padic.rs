//! Capped-relative-precision elements of ℚ_p.
//!
//! A nonzero element is stored as `p^v · u` where `u` is a unit known modulo `p^N`.
//! `v` is exact; `v + N` is the absolute precision (the element is known modulo
//! `p^(v+N)`). Cancellation in addition can leave a value that is only known to be
//! `0 mod p^A`; that is [`Form::ZeroAtLeast`]. Inexact zeros cannot be inverted.
//!
//! ℤ_p is not a separate type: [`PadicNumber::is_integer`] is the membership test.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prime::Prime;
use crate::rational::mod_inverse;
use crate::valuation::{padic_val_rat, split_power, ExtVal};

pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("operands live in different fields: p = {0} and p = {1}")]
    PrimeMismatch(Prime, Prime),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert a value only known to be 0 mod p^{0}")]
    IndeterminateValuation(i64),
    #[error("zero has no canonical expansion")]
    ZeroHasNoExpansion,
    #[error("need {needed} digits of absolute precision, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("value is not a p-adic integer")]
    NotAnInteger,
    #[error("malformed record: {0}")]
    Record(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Form {
    ExactZero,
    /// Congruent to zero modulo `p^A`, nothing more known.
    ZeroAtLeast(i64),
    /// `p^valuation · w` with `w ≡ unit (mod p^precision)`, `0 < unit < p^precision`, `p ∤ unit`.
    Unit {
        valuation: i64,
        unit: BigInt,
        precision: u32,
    },
}

/// An element of ℚ_p known to finite precision.
///
/// `PartialEq` compares representations; use [`PadicNumber::eq_to_precision`] for
/// congruence of the represented values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PadicRecord", try_from = "PadicRecord")]
pub struct PadicNumber {
    prime: Prime,
    form: Form,
}

impl PadicNumber {
    pub fn zero(prime: Prime) -> Self {
        PadicNumber {
            prime,
            form: Form::ExactZero,
        }
    }

    pub fn zero_at_least(prime: Prime, absolute: i64) -> Self {
        PadicNumber {
            prime,
            form: Form::ZeroAtLeast(absolute),
        }
    }

    /// Builds `p^valuation · unit` to relative precision `precision`; `unit` must be prime to `p`.
    pub fn from_unit(prime: Prime, valuation: i64, unit: &BigInt, precision: u32) -> Result<Self, PadicError> {
        assert!(precision >= 1, "relative precision must be at least 1");
        let unit = unit.mod_floor(&prime.pow(precision));
        if (&unit % prime.to_bigint()).is_zero() {
            return Err(PadicError::Record(format!("unit {unit} is divisible by p = {prime}")));
        }
        Ok(PadicNumber {
            prime,
            form: Form::Unit {
                valuation,
                unit,
                precision,
            },
        })
    }

    /// Embeds a rational with `precision` digits of relative precision.
    ///
    /// # Panics
    /// If `precision` is zero.
    pub fn from_rational(prime: Prime, q: &BigRational, precision: u32) -> Self {
        assert!(precision >= 1, "relative precision must be at least 1");
        if q.is_zero() {
            return Self::zero(prime);
        }
        let (_, num) = split_power(prime, q.numer());
        let (_, den) = split_power(prime, q.denom());
        let modulus = prime.pow(precision);
        let den_inv = mod_inverse(&den, &modulus).expect("p-free denominator is a unit");
        PadicNumber {
            prime,
            form: Form::Unit {
                valuation: padic_val_rat(prime, q),
                unit: (num * den_inv).mod_floor(&modulus),
                precision,
            },
        }
    }

    pub fn from_integer(prime: Prime, z: &BigInt, precision: u32) -> Self {
        Self::from_rational(prime, &BigRational::from_integer(z.clone()), precision)
    }

    /// The class of the integer `r` in ℤ/p^kℤ, i.e. `r` known to absolute precision `k`.
    pub fn from_residue(prime: Prime, r: &BigInt, k: u32) -> Self {
        Self::normalize(prime, 0, r.clone(), k as i64)
    }

    /// `p^shift · r` known modulo `p^absolute`.
    fn normalize(prime: Prime, shift: i64, r: BigInt, absolute: i64) -> Self {
        let form = if absolute <= shift {
            Form::ZeroAtLeast(absolute)
        } else {
            let r = r.mod_floor(&prime.pow((absolute - shift) as u32));
            if r.is_zero() {
                Form::ZeroAtLeast(absolute)
            } else {
                let (w, unit) = split_power(prime, &r);
                let valuation = shift + w as i64;
                Form::Unit {
                    valuation,
                    unit,
                    precision: (absolute - valuation) as u32,
                }
            }
        };
        PadicNumber { prime, form }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn is_exact_zero(&self) -> bool {
        self.form == Form::ExactZero
    }

    /// `v + N` for units, `A` for inexact zeros, `None` (infinite) for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.form {
            Form::ExactZero => None,
            Form::ZeroAtLeast(a) => Some(*a),
            Form::Unit {
                valuation, precision, ..
            } => Some(valuation + *precision as i64),
        }
    }

    pub fn relative_precision(&self) -> Option<u32> {
        match &self.form {
            Form::Unit { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    /// The valuation in extended form; `Finite(v)` means norm `p^(-v)`.
    pub fn norm(&self) -> ExtVal {
        match &self.form {
            Form::ExactZero => ExtVal::ExactZero,
            Form::ZeroAtLeast(a) => ExtVal::ZeroAtLeast(*a),
            Form::Unit { valuation, .. } => ExtVal::Finite(*valuation),
        }
    }

    /// True when `|x|_p ≤ 1` is certain.
    pub fn is_integer(&self) -> bool {
        match &self.form {
            Form::ExactZero => true,
            Form::ZeroAtLeast(a) => *a >= 0,
            Form::Unit { valuation, .. } => *valuation >= 0,
        }
    }

    fn same_prime(&self, other: &Self) -> Result<Prime, PadicError> {
        if self.prime == other.prime {
            Ok(self.prime)
        } else {
            Err(PadicError::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        let prime = self.same_prime(other)?;
        let (a_x, a_y) = match (self.absolute_precision(), other.absolute_precision()) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let absolute = a_x.min(a_y);
        let units: Vec<(i64, &BigInt)> = [&self.form, &other.form]
            .into_iter()
            .filter_map(|f| match f {
                Form::Unit { valuation, unit, .. } => Some((*valuation, unit)),
                _ => None,
            })
            .collect();
        let Some(shift) = units.iter().map(|(v, _)| *v).min() else {
            return Ok(Self::zero_at_least(prime, absolute));
        };
        if absolute <= shift {
            return Ok(Self::zero_at_least(prime, absolute));
        }
        let sum: BigInt = units
            .iter()
            .map(|(v, u)| *u * prime.pow((v - shift) as u32))
            .sum();
        Ok(Self::normalize(prime, shift, sum, absolute))
    }

    pub fn neg(&self) -> Self {
        let form = match &self.form {
            Form::Unit {
                valuation,
                unit,
                precision,
            } => Form::Unit {
                valuation: *valuation,
                unit: self.prime.pow(*precision) - unit,
                precision: *precision,
            },
            other => other.clone(),
        };
        PadicNumber {
            prime: self.prime,
            form,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        let prime = self.same_prime(other)?;
        let form = match (&self.form, &other.form) {
            (Form::ExactZero, _) | (_, Form::ExactZero) => Form::ExactZero,
            (Form::ZeroAtLeast(a), Form::ZeroAtLeast(b)) => Form::ZeroAtLeast(a + b),
            (Form::ZeroAtLeast(a), Form::Unit { valuation, .. })
            | (Form::Unit { valuation, .. }, Form::ZeroAtLeast(a)) => Form::ZeroAtLeast(a + valuation),
            (
                Form::Unit {
                    valuation: v1,
                    unit: u1,
                    precision: n1,
                },
                Form::Unit {
                    valuation: v2,
                    unit: u2,
                    precision: n2,
                },
            ) => {
                let precision = *n1.min(n2);
                Form::Unit {
                    valuation: v1 + v2,
                    unit: (u1 * u2).mod_floor(&prime.pow(precision)),
                    precision,
                }
            }
        };
        Ok(PadicNumber { prime, form })
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        match &self.form {
            Form::ExactZero => Err(PadicError::DivisionByZero),
            Form::ZeroAtLeast(a) => Err(PadicError::IndeterminateValuation(*a)),
            Form::Unit {
                valuation,
                unit,
                precision,
            } => {
                let modulus = self.prime.pow(*precision);
                let unit = mod_inverse(unit, &modulus).expect("unit is invertible");
                Ok(PadicNumber {
                    prime: self.prime,
                    form: Form::Unit {
                        valuation: -valuation,
                        unit,
                        precision: *precision,
                    },
                })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_prime(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let one = match self.relative_precision() {
            Some(n) => Self::from_integer(self.prime, &1.into(), n),
            None => Self::from_integer(self.prime, &1.into(), DEFAULT_PRECISION),
        };
        (0..exp).fold(one, |acc, _| acc.mul(self).expect("same prime"))
    }

    /// True when `x ≡ y (mod p^k)` is certain from the known digits.
    pub fn eq_to_precision(&self, other: &Self, k: i64) -> Result<bool, PadicError> {
        Ok(match self.sub(other)?.form {
            Form::ExactZero => true,
            Form::ZeroAtLeast(a) => a >= k,
            Form::Unit { valuation, .. } => valuation >= k,
        })
    }

    pub fn digits(&self) -> Result<DigitExpansion, PadicError> {
        match &self.form {
            Form::ExactZero | Form::ZeroAtLeast(_) => Err(PadicError::ZeroHasNoExpansion),
            Form::Unit {
                valuation,
                unit,
                precision,
            } => {
                let pb = self.prime.to_bigint();
                let mut rest = unit.clone();
                let mut digits = Vec::with_capacity(*precision as usize);
                for _ in 0..*precision {
                    let (q, r) = rest.div_mod_floor(&pb);
                    digits.push(r.to_u64().expect("digit below p"));
                    rest = q;
                }
                Ok(DigitExpansion {
                    prime: self.prime,
                    start: *valuation,
                    digits,
                })
            }
        }
    }

    /// The residue `r ∈ [0, p^k)` with `x ≡ r (mod p^k)`.
    pub fn reduce_mod(&self, k: u32) -> Result<BigInt, PadicError> {
        if !self.is_integer() {
            return Err(PadicError::NotAnInteger);
        }
        let needed = k as i64;
        match &self.form {
            Form::ExactZero => Ok(BigInt::zero()),
            Form::ZeroAtLeast(a) if *a >= needed => Ok(BigInt::zero()),
            Form::ZeroAtLeast(a) => Err(PadicError::InsufficientPrecision {
                needed,
                available: *a,
            }),
            Form::Unit {
                valuation,
                unit,
                precision,
            } => {
                let available = valuation + *precision as i64;
                if available < needed {
                    return Err(PadicError::InsufficientPrecision { needed, available });
                }
                if *valuation >= needed {
                    return Ok(BigInt::zero());
                }
                Ok((unit * self.prime.pow(*valuation as u32)).mod_floor(&self.prime.pow(k)))
            }
        }
    }

    /// Line-oriented record, e.g. `p=5 form=unit v=0 unit=78124 N=7`.
    pub fn to_record(&self) -> String {
        match &self.form {
            Form::ExactZero => format!("p={} form=exact-zero", self.prime),
            Form::ZeroAtLeast(a) => format!("p={} form=zero-at-least v={a}", self.prime),
            Form::Unit {
                valuation,
                unit,
                precision,
            } => format!("p={} form=unit v={valuation} unit={unit} N={precision}", self.prime),
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

impl FromStr for PadicNumber {
    type Err = PadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| PadicError::Record(format!("{msg} in {s:?}"));
        let mut rec = PadicRecord::default();
        for field in s.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key {
                "p" => rec.p = value.parse().map_err(|_| bad("bad p"))?,
                "form" => rec.form = value.to_string(),
                "v" => rec.v = Some(value.parse().map_err(|_| bad("bad v"))?),
                "unit" => rec.unit = Some(value.to_string()),
                "N" => rec.n = Some(value.parse().map_err(|_| bad("bad N"))?),
                _ => return Err(bad("unknown key")),
            }
        }
        PadicNumber::try_from(rec)
    }
}

/// Flat serialized form shared by the text record and JSON output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicRecord {
    pub p: u64,
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

impl From<PadicNumber> for PadicRecord {
    fn from(x: PadicNumber) -> Self {
        let p = x.prime.get();
        match x.form {
            Form::ExactZero => PadicRecord {
                p,
                form: "exact-zero".into(),
                ..Default::default()
            },
            Form::ZeroAtLeast(a) => PadicRecord {
                p,
                form: "zero-at-least".into(),
                v: Some(a),
                ..Default::default()
            },
            Form::Unit {
                valuation,
                unit,
                precision,
            } => PadicRecord {
                p,
                form: "unit".into(),
                v: Some(valuation),
                unit: Some(unit.to_string()),
                n: Some(precision),
            },
        }
    }
}

impl TryFrom<PadicRecord> for PadicNumber {
    type Error = PadicError;

    fn try_from(rec: PadicRecord) -> Result<Self, Self::Error> {
        let prime = Prime::new(rec.p).map_err(|e| PadicError::Record(e.to_string()))?;
        let missing = |name: &str| PadicError::Record(format!("missing field {name}"));
        match rec.form.as_str() {
            "exact-zero" => Ok(Self::zero(prime)),
            "zero-at-least" => Ok(Self::zero_at_least(prime, rec.v.ok_or_else(|| missing("v"))?)),
            "unit" => {
                let v = rec.v.ok_or_else(|| missing("v"))?;
                let n = rec.n.ok_or_else(|| missing("N"))?;
                let unit: BigInt = rec
                    .unit
                    .ok_or_else(|| missing("unit"))?
                    .parse()
                    .map_err(|_| PadicError::Record("unit is not an integer".into()))?;
                if n == 0 {
                    return Err(PadicError::Record("N must be positive".into()));
                }
                if unit <= BigInt::zero() || unit >= prime.pow(n) {
                    return Err(PadicError::Record(format!("unit must lie in (0, p^N), got {unit}")));
                }
                Self::from_unit(prime, v, &unit, n)
            }
            other => Err(PadicError::Record(format!("unknown form {other:?}"))),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        /// Panics if the operands have different primes.
        impl $trait<&PadicNumber> for &PadicNumber {
            type Output = PadicNumber;

            fn $method(self, rhs: &PadicNumber) -> PadicNumber {
                PadicNumber::$method(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        PadicNumber::neg(self)
    }
}

/// A truncated expansion `Σ digits[i] · p^(start + i)`, lowest digit first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub prime: Prime,
    pub start: i64,
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    /// Re-sums the digits into an element known to absolute precision `start + len`.
    pub fn to_padic(&self) -> PadicNumber {
        let pb = self.prime.to_bigint();
        let sum = self
            .digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, d| acc * &pb + BigInt::from(*d));
        PadicNumber::normalize(self.prime, self.start, sum, self.start + self.digits.len() as i64)
    }

    /// Most significant digit first, as digits are written by hand.
    pub fn digit_string(&self) -> String {
        let sep = if self.prime.get() > 10 { "," } else { "" };
        self.digits
            .iter()
            .rev()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "...{}", self.digit_string())?;
        if self.start != 0 {
            write!(f, " × {}^{}", self.prime, self.start)?;
        }
        Ok(())
    }
}
