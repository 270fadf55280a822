//! Brute-force ground truth over ℤ/p^kℤ.
//!
//! Nothing here calls into the p-adic or Hensel code paths: coefficients are reduced
//! with a local extended-Euclid inverse and roots are found by testing every residue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::padic::PadicNumber;
use crate::poly::PadicPoly;
use crate::prime::Prime;

/// Largest `p^k` the scanner accepts.
pub const MAX_DOMAIN: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("domain {p}^{k} exceeds the scan limit of {MAX_DOMAIN}")]
    DomainTooLarge { p: u64, k: u32 },
    #[error("k must be positive")]
    ZeroExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodFilter {
    pub center: u64,
    pub radius_exponent: u64,
    /// Roots `r` with `ν_p(r - center) > radius_exponent`, as far as `p^k` can tell.
    pub roots: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
    /// Coefficients of `f` reduced mod `p^k`, lowest degree first.
    pub coeffs: Vec<u64>,
    /// Every `r ∈ [0, p^k)` with `f(r) ≡ 0`, ascending.
    pub roots: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<NeighborhoodFilter>,
}

fn domain(p: Prime, k: u32) -> Result<u64, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroExponent);
    }
    p.get()
        .checked_pow(k)
        .filter(|&m| m <= MAX_DOMAIN)
        .ok_or(OracleError::DomainTooLarge { p: p.get(), k })
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

fn reduce_int(z: &BigInt, m: u64) -> u64 {
    z.mod_floor(&BigInt::from(m)).to_u64().expect("below modulus")
}

/// `q mod m` for a rational whose denominator is prime to `m`.
pub fn residue_of(q: &BigRational, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let inv = inverse_mod(reduce_int(q.denom(), m), m)?;
    Some(((reduce_int(q.numer(), m) as u128 * inv as u128) % m as u128) as u64)
}

fn eval_mod(coeffs: &[u64], x: u64, m: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % m as u128) as u64
}

/// Tests every residue mod `p^k` as a root of `f`.
pub fn enumerate_roots(f: &PadicPoly, k: u32) -> Result<OracleReport, OracleError> {
    let p = f.prime();
    let m = domain(p, k)?;
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| residue_of(c, m).expect("coefficients are p-integral"))
        .collect();
    let roots = (0..m).filter(|&x| eval_mod(&coeffs, x, m) == 0).collect();
    Ok(OracleReport {
        p: p.get(),
        k,
        modulus: m,
        coeffs,
        roots,
        filter: None,
    })
}

impl OracleReport {
    /// Keeps the roots with `ν_p(r - center) > radius`. Only `k` digits are known, so
    /// the test is `r ≡ center (mod p^min(radius + 1, k))`.
    pub fn with_filter(mut self, center: &BigRational, radius_exponent: u64) -> Self {
        let center = residue_of(center, self.modulus).expect("p-integral center");
        let digits = (radius_exponent + 1).min(self.k as u64) as u32;
        let m = self.p.pow(digits);
        let roots = self.roots.iter().copied().filter(|r| r % m == center % m).collect();
        self.filter = Some(NeighborhoodFilter {
            center,
            radius_exponent,
            roots,
        });
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub op: ArithOp,
    pub x: String,
    pub y: String,
    pub expected: u64,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub p: u64,
    pub k: u32,
    pub trials: usize,
    pub mismatches: Vec<Mismatch>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_integral(rng: &mut StdRng, p: u64, m: u64) -> BigRational {
    let span = (m * p * p) as i64;
    let scale = p.pow(rng.gen_range(0..3)) as i64;
    let num = rng.gen_range(-span..=span) * scale;
    let mut den = rng.gen_range(1..1000i64);
    while den % p as i64 == 0 {
        den += 1;
    }
    rat(num, den)
}

/// Compares p-adic ring operations against rational arithmetic reduced mod `p^k`.
///
/// A few fixed pairs (`-1 + 1`, `1/3 · 3`, `1/3 - 1`, skipping any that are not
/// p-integral) and an `x + (-x)` cancellation run ahead of the random pairs.
pub fn crosscheck_arith(p: Prime, k: u32, trials: usize, seed: u64) -> Result<CrosscheckReport, OracleError> {
    let m = domain(p, k)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pairs: Vec<(BigRational, BigRational)> = vec![
        (rat(-1, 1), rat(1, 1)),
        (rat(1, 3), rat(3, 1)),
        (rat(1, 3), rat(-1, 1)),
    ];
    pairs.retain(|(x, y)| residue_of(x, m).is_some() && residue_of(y, m).is_some());
    let x = random_integral(&mut rng, p.get(), m);
    pairs.push((x.clone(), -x));
    pairs.extend((0..trials).map(|_| {
        let x = random_integral(&mut rng, p.get(), m);
        let y = random_integral(&mut rng, p.get(), m);
        (x, y)
    }));

    let mut mismatches = Vec::new();
    for (x, y) in &pairs {
        let px = PadicNumber::from_rational(p, x, k);
        let py = PadicNumber::from_rational(p, y, k);
        let mut cases = vec![
            (ArithOp::Add, px.add(&py), x + y),
            (ArithOp::Sub, px.sub(&py), x - y),
            (ArithOp::Mul, px.mul(&py), x * y),
        ];
        if !y.is_zero() && residue_of(y, p.get()).is_some_and(|r| r != 0) {
            cases.push((ArithOp::Div, px.div(&py), x / y));
        }
        for (op, got, want) in cases {
            let expected = residue_of(&want, m).expect("integral result");
            let got = got.map_err(|e| e.to_string()).and_then(|v| v.reduce_mod(k).map_err(|e| e.to_string()));
            if got.as_ref().ok() != Some(&BigInt::from(expected)) {
                mismatches.push(Mismatch {
                    op,
                    x: x.to_string(),
                    y: y.to_string(),
                    expected,
                    got: got.map_or_else(|e| e, |v| v.to_string()),
                });
            }
        }
    }
    Ok(CrosscheckReport {
        p: p.get(),
        k,
        trials: pairs.len(),
        mismatches,
    })
}
