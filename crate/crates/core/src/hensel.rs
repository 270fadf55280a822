//! Certified Hensel lifting.
//!
//! Given `f ∈ ℤ_p[X]` and a seed `a` with `|f(a)|_p < |f'(a)|_p²`, there is a unique
//! root `z` with `|z - a|_p < |f'(a)|_p`, and it satisfies `|z - a|_p = |f(a)|_p / |f'(a)|_p`
//! and `|f'(z)|_p = |f'(a)|_p`. In exponent form, with `e = ν(f'(a))`, `m = ν(f(a))` and
//! `t = m - 2e ≥ 1` (so `T = p^-t`), the Newton iterates satisfy
//!
//! ```text
//! ν(f'(a_n)) = e,    ν(f(a_n)) ≥ 2e + t·2^n,    ν(a_k - a_n) ≥ e + t·2^n  (n ≤ k)
//! ```
//!
//! [`lift`] runs the iteration, records every iterate with its exact valuations, and
//! returns a [`HenselCertificate`] that [`verify_certificate`] can re-check from scratch.
//!
//! Valuations are always computed exactly in ℚ. Iterates are reduced modulo `p^W` with
//! `W = 2K + e`, which is enough slack that reduction never lowers `ν(f(a_n))` below
//! the bound above before the iteration stops.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::PadicPoly;
use crate::prime::Prime;
use crate::rational::{format_rational, parse_rational, rational_residue};
use crate::valuation::padic_val_rat;

/// Hard cap on Newton steps; about `log2(K) + 2` are ever needed.
pub const MAX_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HenselError {
    #[error("seed is not a p-adic integer")]
    NotAnInteger,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("hypothesis fails: v(f(a)) = {m} is not greater than 2·v(f'(a)) = 2·{e}")]
    HypothesisFailed { m: u64, e: u64 },
    #[error("f'(a) = 0")]
    DerivativeVanishes,
    #[error("target precision {k} must exceed v(f'(a)) = {e}")]
    PrecisionExhausted { k: u32, e: u64 },
    #[error("Newton correction f(a_n)/f'(a_n) is not integral")]
    CorrectionNotIntegral,
    #[error("internal bound violation: {0}")]
    InternalBoundViolation(String),
    #[error("malformed certificate: {0}")]
    Record(String),
}

/// Exact valuations at the seed. `m = None` means `f(a) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypothesis {
    pub e: u64,
    pub m: Option<u64>,
    pub t: Option<u64>,
}

impl Hypothesis {
    pub fn is_degenerate(&self) -> bool {
        self.m.is_none()
    }

    /// `2e + t·2^n`, the lower bound on `ν(f(a_n))`.
    pub fn value_bound(&self, n: usize) -> u128 {
        let t = self.t.unwrap_or(0) as u128;
        2 * self.e as u128 + t.saturating_mul(1u128.checked_shl(n as u32).unwrap_or(u128::MAX))
    }

    /// `e + t·2^n`, the lower bound on `ν(a_k - a_n)` for `k ≥ n`.
    pub fn distance_bound(&self, n: usize) -> u128 {
        self.value_bound(n) - self.e as u128
    }
}

/// One Newton iterate. `a_n` is the residue modulo `p^W`; `val_f = None` means `f(a_n) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftStep {
    pub n: usize,
    #[serde(with = "bigint_string")]
    pub a_n: BigInt,
    pub val_f: Option<u64>,
    pub val_fp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselCertificate {
    pub poly: PadicPoly,
    pub seed: BigRational,
    /// Target absolute precision `K`; the root is reported modulo `p^K`.
    pub target: u32,
    /// Precision `W` the iterates were computed at.
    pub working: u32,
    pub hypothesis: Hypothesis,
    pub trace: Vec<LiftStep>,
    pub root: BigInt,
    /// `ν(root - a) = m - e`; absent in the degenerate case.
    pub dist_exponent: Option<u64>,
    /// Roots `z'` with `ν(z' - a) > e` coincide with `root`.
    pub uniqueness_radius_exponent: u64,
    pub degenerate: bool,
}

impl HenselCertificate {
    pub fn prime(&self) -> Prime {
        self.poly.prime()
    }
}

fn val(p: Prime, q: &BigRational) -> Option<u64> {
    if q.is_zero() {
        None
    } else {
        Some(padic_val_rat(p, q) as u64)
    }
}

fn int(z: &BigInt) -> BigRational {
    BigRational::from_integer(z.clone())
}

/// Checks `|f(a)|_p < |f'(a)|_p²` exactly and reports the exponents.
pub fn check_hypothesis(f: &PadicPoly, a: &BigRational) -> Result<Hypothesis, HenselError> {
    let p = f.prime();
    if padic_val_rat(p, a) < 0 {
        return Err(HenselError::NotAnInteger);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(HenselError::ConstantPolynomial);
    }
    let fa = f.eval_exact(a);
    let fpa = f.derivative().eval_exact(a);
    let e = val(p, &fpa).ok_or(HenselError::DerivativeVanishes)?;
    let m = val(p, &fa);
    let t = match m {
        Some(m) if m <= 2 * e => return Err(HenselError::HypothesisFailed { m, e }),
        Some(m) => Some(m - 2 * e),
        None => None,
    };
    Ok(Hypothesis { e, m, t })
}

/// `a_n - f(a_n)/f'(a_n)` reduced modulo `p^precision`. The quotient is formed exactly
/// in ℚ, so the only inverse taken is of the `p`-free part of `f'(a_n)`.
pub fn newton_step(f: &PadicPoly, a_n: &BigInt, hyp: &Hypothesis, precision: u32) -> Result<BigInt, HenselError> {
    let p = f.prime();
    if precision as u64 <= hyp.e {
        return Err(HenselError::PrecisionExhausted { k: precision, e: hyp.e });
    }
    let modulus = p.pow(precision);
    let x = int(a_n);
    let fx = f.eval_exact(&x);
    if fx.is_zero() {
        return Ok(a_n.mod_floor(&modulus));
    }
    let fpx = f.derivative().eval_exact(&x);
    if fpx.is_zero() {
        return Err(HenselError::DerivativeVanishes);
    }
    let correction = fx / fpx;
    if padic_val_rat(p, &correction) < 0 {
        return Err(HenselError::CorrectionNotIntegral);
    }
    let c = rational_residue(&correction, &modulus).expect("integral correction");
    Ok((a_n - c).mod_floor(&modulus))
}

/// Lifts the seed `a` to the root of `f` modulo `p^k` and certifies the result.
pub fn lift(f: &PadicPoly, a: &BigRational, k: u32) -> Result<HenselCertificate, HenselError> {
    let p = f.prime();
    let hyp = check_hypothesis(f, a)?;
    if k == 0 || (!hyp.is_degenerate() && k as u64 <= hyp.e) {
        return Err(HenselError::PrecisionExhausted { k, e: hyp.e });
    }
    let working = 2 * k + hyp.e as u32;
    let target_mod = p.pow(k);
    let seed_mod = |m: &BigInt| rational_residue(a, m).expect("integral seed");

    let mut cert = HenselCertificate {
        poly: f.clone(),
        seed: a.clone(),
        target: k,
        working,
        hypothesis: hyp,
        trace: Vec::new(),
        root: seed_mod(&target_mod),
        dist_exponent: hyp.m.map(|m| m - hyp.e),
        uniqueness_radius_exponent: hyp.e,
        degenerate: hyp.is_degenerate(),
    };
    if cert.degenerate {
        return Ok(cert);
    }

    let fp = f.derivative();
    let mut a_n = seed_mod(&p.pow(working));
    for n in 0.. {
        if n >= MAX_STEPS {
            return Err(HenselError::InternalBoundViolation(format!("no convergence in {MAX_STEPS} steps")));
        }
        let x = int(&a_n);
        let val_f = val(p, &f.eval_exact(&x));
        let val_fp = val(p, &fp.eval_exact(&x));
        if val_fp != Some(hyp.e) {
            return Err(HenselError::InternalBoundViolation(format!(
                "v(f'(a_{n})) = {val_fp:?}, expected {}",
                hyp.e
            )));
        }
        if val_f.is_some_and(|v| (v as u128) < hyp.value_bound(n)) {
            return Err(HenselError::InternalBoundViolation(format!(
                "v(f(a_{n})) = {val_f:?} below bound {}",
                hyp.value_bound(n)
            )));
        }
        cert.trace.push(LiftStep {
            n,
            a_n: a_n.clone(),
            val_f,
            val_fp: hyp.e,
        });
        // The next correction has valuation v(f(a_n)) - e.
        if val_f.is_none_or(|v| v - hyp.e >= k as u64) {
            break;
        }
        a_n = newton_step(f, &a_n, &hyp, working)?;
    }
    cert.root = a_n.mod_floor(&target_mod);

    let report = verify_certificate(&cert);
    if !report.passed() {
        return Err(HenselError::InternalBoundViolation(report.to_string()));
    }
    Ok(cert)
}

/// A certificate check that did not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckFailure {
    Hypothesis(String),
    Precision,
    Seed,
    TraceShape(String),
    StepValuation { n: usize },
    DerivativeNorm { n: usize },
    InductionBound { n: usize },
    Quadratic { n: usize },
    NewtonStep { n: usize },
    DistanceBound { n: usize, k: usize },
    Stopping,
    RootRange,
    RootMatchesTrace,
    RootNotZero,
    RootNearSeed,
    DistanceLaw,
    RootDerivativeNorm,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::Hypothesis(s) => write!(f, "hypothesis: {s}"),
            CheckFailure::Precision => write!(f, "working precision below K + e"),
            CheckFailure::Seed => write!(f, "a_0 is not the seed"),
            CheckFailure::TraceShape(s) => write!(f, "trace: {s}"),
            CheckFailure::StepValuation { n } => write!(f, "recorded valuations of step {n} are wrong"),
            CheckFailure::DerivativeNorm { n } => write!(f, "v(f'(a_{n})) != e"),
            CheckFailure::InductionBound { n } => write!(f, "v(f(a_{n})) < 2e + t·2^{n}"),
            CheckFailure::Quadratic { n } => write!(f, "no exponent doubling from step {n}"),
            CheckFailure::NewtonStep { n } => write!(f, "a_{} is not the Newton step from a_{n}", n + 1),
            CheckFailure::DistanceBound { n, k } => write!(f, "v(a_{k} - a_{n}) < e + t·2^{n}"),
            CheckFailure::Stopping => write!(f, "stopping rule violated"),
            CheckFailure::RootRange => write!(f, "root outside [0, p^K)"),
            CheckFailure::RootMatchesTrace => write!(f, "root differs from the last iterate"),
            CheckFailure::RootNotZero => write!(f, "f(root) != 0 mod p^K"),
            CheckFailure::RootNearSeed => write!(f, "root not within p^(e+1) of the seed"),
            CheckFailure::DistanceLaw => write!(f, "v(root - a) != m - e"),
            CheckFailure::RootDerivativeNorm => write!(f, "v(f'(root)) != e"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    pub failures: Vec<CheckFailure>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("all checks passed");
        }
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// `ν_p(x)` for an integer, capped at `cap` (so zero reports `cap`).
fn val_capped(p: Prime, x: &BigRational, cap: u64) -> u64 {
    val(p, x).map_or(cap, |v| v.min(cap))
}

/// Re-derives every claim in the certificate from `f`, the seed, and the recorded iterates.
pub fn verify_certificate(c: &HenselCertificate) -> Verification {
    let mut out = Verification::default();
    let fail = |out: &mut Verification, f: CheckFailure| out.failures.push(f);
    let f = &c.poly;
    let p = f.prime();
    let fp = f.derivative();
    let k = c.target;

    let hyp = match check_hypothesis(f, &c.seed) {
        Ok(h) => h,
        Err(err) => {
            fail(&mut out, CheckFailure::Hypothesis(err.to_string()));
            return out;
        }
    };
    if hyp != c.hypothesis {
        fail(&mut out, CheckFailure::Hypothesis(format!("recorded {:?}, recomputed {hyp:?}", c.hypothesis)));
        return out;
    }
    let e = hyp.e;
    if c.degenerate != hyp.is_degenerate()
        || c.uniqueness_radius_exponent != e
        || c.dist_exponent != hyp.m.map(|m| m - e)
    {
        fail(&mut out, CheckFailure::Hypothesis("derived exponents inconsistent".into()));
    }
    if k == 0 || (!hyp.is_degenerate() && (k as u64) <= e) || (c.working as u64) < k as u64 + e {
        fail(&mut out, CheckFailure::Precision);
        return out;
    }

    let target_mod = p.pow(k);
    let working_mod = p.pow(c.working);
    if c.root < BigInt::zero() || c.root >= target_mod {
        fail(&mut out, CheckFailure::RootRange);
    }

    if c.degenerate {
        if !c.trace.is_empty() {
            fail(&mut out, CheckFailure::TraceShape("degenerate lift has steps".into()));
        }
        if Some(&c.root) != rational_residue(&c.seed, &target_mod).as_ref() {
            fail(&mut out, CheckFailure::RootMatchesTrace);
        }
    } else {
        check_trace(c, &hyp, &working_mod, &target_mod, &mut out);
    }

    let root = int(&c.root);
    if val_capped(p, &f.eval_exact(&root), k as u64) < k as u64 {
        fail(&mut out, CheckFailure::RootNotZero);
    }
    let dist = val_capped(p, &(&root - &c.seed), k as u64);
    if dist < (e + 1).min(k as u64) {
        fail(&mut out, CheckFailure::RootNearSeed);
    }
    if let Some(m) = hyp.m {
        // Only the first K digits of the root are known.
        if dist != (m - e).min(k as u64) {
            fail(&mut out, CheckFailure::DistanceLaw);
        }
    }
    if (k as u64) > e && val(p, &fp.eval_exact(&root)) != Some(e) {
        fail(&mut out, CheckFailure::RootDerivativeNorm);
    }
    out
}

fn check_trace(c: &HenselCertificate, hyp: &Hypothesis, working_mod: &BigInt, target_mod: &BigInt, out: &mut Verification) {
    let f = &c.poly;
    let p = f.prime();
    let fp = f.derivative();
    let e = hyp.e;
    let k = c.target as u64;
    let trace = &c.trace;

    if trace.is_empty() {
        out.failures.push(CheckFailure::TraceShape("empty".into()));
        return;
    }
    let t = hyp.t.expect("non-degenerate");
    let max_len = (k.saturating_sub(e)).div_ceil(t).max(1).next_power_of_two().trailing_zeros() as usize + 1;
    if trace.len() > max_len.min(MAX_STEPS) {
        out.failures.push(CheckFailure::TraceShape(format!("{} steps, bound {max_len}", trace.len())));
    }
    if Some(&trace[0].a_n) != rational_residue(&c.seed, working_mod).as_ref() {
        out.failures.push(CheckFailure::Seed);
    }
    for (i, step) in trace.iter().enumerate() {
        if step.n != i || step.a_n < BigInt::zero() || &step.a_n >= working_mod {
            out.failures.push(CheckFailure::TraceShape(format!("malformed step {i}")));
            return;
        }
        let x = int(&step.a_n);
        let val_f = val(p, &f.eval_exact(&x));
        let val_fp = val(p, &fp.eval_exact(&x));
        if val_f != step.val_f || val_fp != Some(step.val_fp) {
            out.failures.push(CheckFailure::StepValuation { n: i });
        }
        if step.val_fp != e {
            out.failures.push(CheckFailure::DerivativeNorm { n: i });
        }
        if step.val_f.is_some_and(|v| (v as u128) < hyp.value_bound(i)) {
            out.failures.push(CheckFailure::InductionBound { n: i });
        }
        let stops = step.val_f.is_none_or(|v| v - e.min(v) >= k);
        if stops != (i + 1 == trace.len()) {
            out.failures.push(CheckFailure::Stopping);
        }
        if let Some(next) = trace.get(i + 1) {
            if newton_step(f, &step.a_n, hyp, c.working).ok().as_ref() != Some(&next.a_n) {
                out.failures.push(CheckFailure::NewtonStep { n: i });
            }
            if let (Some(v0), Some(v1)) = (step.val_f, next.val_f) {
                if (v1 as i128 - 2 * e as i128) < 2 * (v0 as i128 - 2 * e as i128) {
                    out.failures.push(CheckFailure::Quadratic { n: i });
                }
            }
        }
    }
    for (n, earlier) in trace.iter().enumerate() {
        for (later_idx, later) in trace.iter().enumerate().skip(n + 1) {
            let d = val_capped(p, &int(&(&later.a_n - &earlier.a_n)), c.working as u64);
            if (d as u128) < hyp.distance_bound(n).min(c.working as u128) {
                out.failures.push(CheckFailure::DistanceBound { n, k: later_idx });
            }
        }
    }
    let last = &trace[trace.len() - 1];
    if last.a_n.mod_floor(target_mod) != c.root {
        out.failures.push(CheckFailure::RootMatchesTrace);
    }
}

/// Whether `z2` is consistent with uniqueness: a root of `f` mod `p^K` with
/// `ν(z2 - a) > e` must agree with the certified root. Non-roots are vacuously consistent.
///
/// A residue root mod `p^K` only determines a root of `f` in ℤ_p to `K - e` digits
/// (for `e > 0` there are spurious residue roots, e.g. 41 for `x² - 17` mod `2^6`), so the
/// comparison is modulo `p^(K-e)`. For `e = 0` that is the full `p^K`.
pub fn unique_in_neighborhood(c: &HenselCertificate, z2: &BigInt) -> bool {
    let p = c.prime();
    let k = c.target as u64;
    let e = c.uniqueness_radius_exponent;
    let z = int(z2);
    if val_capped(p, &c.poly.eval_exact(&z), k) < k || k <= e {
        return true;
    }
    let near = val_capped(p, &(&z - &c.seed), k) > e;
    let digits = p.pow((k - e) as u32);
    !near || z2.mod_floor(&digits) == c.root.mod_floor(&digits)
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Serialized certificate. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub p: u64,
    pub f: Vec<String>,
    pub a: String,
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "W")]
    pub w: u32,
    pub e: u64,
    pub m: Option<u64>,
    pub t: Option<u64>,
    pub degenerate: bool,
    pub trace: Vec<LiftStep>,
    pub root: String,
    pub dist_exponent: Option<u64>,
    pub uniqueness_radius_exponent: u64,
    pub checks_passed: bool,
}

impl HenselCertificate {
    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            p: self.prime().get(),
            f: self.poly.coeffs().iter().map(format_rational).collect(),
            a: format_rational(&self.seed),
            k: self.target,
            w: self.working,
            e: self.hypothesis.e,
            m: self.hypothesis.m,
            t: self.hypothesis.t,
            degenerate: self.degenerate,
            trace: self.trace.clone(),
            root: self.root.to_string(),
            dist_exponent: self.dist_exponent,
            uniqueness_radius_exponent: self.uniqueness_radius_exponent,
            checks_passed: verify_certificate(self).passed(),
        }
    }

    pub fn from_record(rec: &CertificateRecord) -> Result<Self, HenselError> {
        let bad = |s: String| HenselError::Record(s);
        let prime = Prime::new(rec.p).map_err(|e| bad(e.to_string()))?;
        let coeffs = rec
            .f
            .iter()
            .map(|c| parse_rational(c).map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let poly = PadicPoly::new(prime, coeffs).map_err(|e| bad(e.to_string()))?;
        Ok(HenselCertificate {
            poly,
            seed: parse_rational(&rec.a).map_err(|e| bad(e.to_string()))?,
            target: rec.k,
            working: rec.w,
            hypothesis: Hypothesis {
                e: rec.e,
                m: rec.m,
                t: rec.t,
            },
            trace: rec.trace.clone(),
            root: rec.root.parse().map_err(|_| bad(format!("bad root {:?}", rec.root)))?,
            dist_exponent: rec.dist_exponent,
            uniqueness_radius_exponent: rec.uniqueness_radius_exponent,
            degenerate: rec.degenerate,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, HenselError> {
        let rec: CertificateRecord = serde_json::from_str(s).map_err(|e| HenselError::Record(e.to_string()))?;
        Self::from_record(&rec)
    }

    /// Human-readable `key: value` rendering with the same numbers as the JSON record.
    pub fn to_text(&self) -> String {
        let rec = self.to_record();
        let opt = |x: Option<u64>| x.map_or_else(|| "inf".to_string(), |v| v.to_string());
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(": ");
            s.push_str(&v);
            s.push('\n');
        };
        line("p", rec.p.to_string());
        line("f", self.poly.to_string());
        line("a", rec.a.clone());
        line("K", rec.k.to_string());
        line("W", rec.w.to_string());
        line("e", rec.e.to_string());
        line("m", opt(rec.m));
        line("t", rec.t.map_or_else(|| "-".into(), |t| t.to_string()));
        line("degenerate", rec.degenerate.to_string());
        line("trace", format!("{} steps", rec.trace.len()));
        for step in &rec.trace {
            s.push_str(&format!(
                "  n={} a_n={} val_f={} val_fp={}\n",
                step.n,
                step.a_n,
                opt(step.val_f),
                step.val_fp
            ));
        }
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(": ");
            s.push_str(&v);
            s.push('\n');
        };
        line("root", rec.root.clone());
        line("dist_exponent", rec.dist_exponent.map_or_else(|| "-".into(), |d| d.to_string()));
        line("uniqueness_radius_exponent", rec.uniqueness_radius_exponent.to_string());
        line("checks_passed", rec.checks_passed.to_string());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(p: u64, s: &str) -> PadicPoly {
        PadicPoly::parse(pr(p), s).unwrap()
    }

    // Oracle: every x in [0, p^k) with f(x) ≡ 0, by direct scan.
    fn scan(f: &PadicPoly, k: u32) -> Vec<u64> {
        let m = f.prime().get().pow(k);
        (0..m)
            .filter(|&x| val_capped(f.prime(), &f.eval_exact(&q(x as i64)), k as u64) >= k as u64)
            .collect()
    }

    #[test]
    fn hypothesis_examples() {
        assert_eq!(
            check_hypothesis(&poly(5, "x^2 - 6"), &q(1)).unwrap(),
            Hypothesis { e: 0, m: Some(1), t: Some(1) }
        );
        assert_eq!(
            check_hypothesis(&poly(2, "x^2 - 17"), &q(1)).unwrap(),
            Hypothesis { e: 1, m: Some(4), t: Some(2) }
        );
        assert_eq!(
            check_hypothesis(&poly(5, "x^2 - 5"), &q(0)),
            Err(HenselError::DerivativeVanishes)
        );
        assert_eq!(
            check_hypothesis(&poly(2, "x^2 - 3"), &q(1)),
            Err(HenselError::HypothesisFailed { m: 1, e: 1 })
        );
        assert_eq!(check_hypothesis(&poly(5, "4"), &q(0)), Err(HenselError::ConstantPolynomial));
        assert_eq!(
            check_hypothesis(&poly(5, "x"), &BigRational::new(1.into(), 5.into())),
            Err(HenselError::NotAnInteger)
        );
        assert!(check_hypothesis(&poly(7, "x^2 - 1"), &q(1)).unwrap().is_degenerate());
    }

    #[test]
    fn newton_step_examples() {
        let f = poly(5, "x^2 - 6");
        let hyp = check_hypothesis(&f, &q(1)).unwrap();
        let a1 = newton_step(&f, &1.into(), &hyp, 4).unwrap();
        assert_eq!(a1, BigInt::from(316));
        assert_eq!(scan(&f, 2), vec![9, 16]);
        assert_eq!(a1 % 25, BigInt::from(16));

        let g = poly(7, "x^2 - 1");
        let hyp = check_hypothesis(&g, &q(1)).unwrap();
        assert_eq!(newton_step(&g, &1.into(), &hyp, 5).unwrap(), BigInt::from(1));

        let h = poly(2, "x^2 - 17");
        let hyp = check_hypothesis(&h, &q(1)).unwrap();
        let a1 = newton_step(&h, &1.into(), &hyp, 6).unwrap();
        assert_eq!(a1, BigInt::from(9));
        assert_eq!((&a1 * &a1) % 64, BigInt::from(17));
        assert_eq!(
            newton_step(&h, &1.into(), &hyp, 1),
            Err(HenselError::PrecisionExhausted { k: 1, e: 1 })
        );
    }

    #[test]
    fn lift_sqrt6() {
        let f = poly(5, "x^2 - 6");
        let c = lift(&f, &q(1), 4).unwrap();
        assert_eq!(scan(&f, 4), vec![109, 516]);
        assert_eq!(c.root, BigInt::from(516));
        let vals: Vec<_> = c.trace.iter().map(|s| s.val_f.unwrap()).collect();
        assert_eq!(vals.len(), 3);
        for (v, bound) in vals.iter().zip([1, 2, 4]) {
            assert!(*v >= bound, "{vals:?}");
        }
        assert_eq!(c.dist_exponent, Some(1));
        assert!(verify_certificate(&c).passed());
    }

    #[test]
    fn lift_cube_root_of_two() {
        let f = poly(5, "x^3 - 2");
        let c = lift(&f, &q(3), 3).unwrap();
        let near: Vec<_> = scan(&f, 3).into_iter().filter(|r| r % 5 == 3).collect();
        assert_eq!(near.len(), 1);
        assert_eq!(c.root, BigInt::from(near[0]));
    }

    #[test]
    fn lift_degenerate() {
        let c = lift(&poly(7, "x^2 - 1"), &q(1), 5).unwrap();
        assert!(c.degenerate);
        assert!(c.trace.is_empty());
        assert_eq!(c.root, BigInt::from(1));
        assert!(verify_certificate(&c).passed());
    }

    #[test]
    fn lift_two_adic_with_positive_e() {
        let f = poly(2, "x^2 - 17");
        let c = lift(&f, &q(1), 6).unwrap();
        assert_eq!((&c.root * &c.root - 17) % 64, BigInt::zero());
        assert_eq!(c.root.clone() % 4, BigInt::from(1));
        assert!(verify_certificate(&c).passed());
        let roots = scan(&f, 6);
        assert_eq!(roots, vec![9, 23, 41, 55]);
        for r in roots {
            assert!(unique_in_neighborhood(&c, &r.into()), "{r}");
        }
    }

    #[test]
    fn lift_rejects_low_precision() {
        let f = poly(2, "x^2 - 17");
        assert_eq!(lift(&f, &q(1), 1), Err(HenselError::PrecisionExhausted { k: 1, e: 1 }));
        assert!(lift(&poly(5, "x^2 - 6"), &q(1), 0).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let c = lift(&poly(5, "x^2 - 6"), &q(1), 4).unwrap();

        let mut bad = c.clone();
        bad.root = (&bad.root + BigInt::from(125)) % 625;
        let r = verify_certificate(&bad);
        assert!(r.failures.contains(&CheckFailure::RootNotZero), "{r}");

        let mut bad = c.clone();
        bad.trace[1].val_f = bad.trace[1].val_f.map(|v| v - 1);
        let r = verify_certificate(&bad);
        assert!(r.failures.contains(&CheckFailure::StepValuation { n: 1 }), "{r}");

        let mut bad = c.clone();
        bad.hypothesis.e += 1;
        assert!(!verify_certificate(&bad).passed());
    }

    #[test]
    fn uniqueness_against_scan() {
        let f = poly(5, "x^2 - 6");
        let c = lift(&f, &q(1), 4).unwrap();
        assert!(unique_in_neighborhood(&c, &516.into()));
        assert!(unique_in_neighborhood(&c, &109.into()));
        // 516 + 5 is congruent to the seed but is not a root
        assert!(unique_in_neighborhood(&c, &521.into()));
        let mut wrong = c.clone();
        wrong.root = 109.into();
        assert!(!unique_in_neighborhood(&wrong, &516.into()));
    }

    #[test]
    fn json_round_trip() {
        for (f, a, k) in [("x^2 - 6", 1, 4), ("x^2 - 1", 1, 3), ("x^2 - 17", 1, 7)] {
            let p = if f == "x^2 - 17" { 2 } else if f == "x^2 - 1" { 7 } else { 5 };
            let c = lift(&poly(p, f), &q(a), k).unwrap();
            let json = c.to_json();
            assert_eq!(HenselCertificate::from_json(&json).unwrap(), c);
            assert!(json.contains("\"checks_passed\": true"));
        }
        assert!(HenselCertificate::from_json("{}").is_err());
    }

    #[test]
    fn text_rendering() {
        let c = lift(&poly(5, "x^2 - 6"), &q(1), 4).unwrap();
        let text = c.to_text();
        assert!(text.contains("root: 516\n"));
        assert!(text.contains("  n=0 a_n=1 val_f=1 val_fp=0\n"));
        assert!(text.ends_with("checks_passed: true\n"));
    }
}
