//! Dense univariate polynomials over ℤ_p with exact rational coefficients.
//!
//! Coefficients stay exact and are embedded into capped precision only when a
//! polynomial is evaluated at a [`PadicNumber`]. [`PadicPoly::eval_exact`] keeps the
//! whole computation in ℚ, which is what the Hensel solver uses for valuations.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::padic::{PadicError, PadicNumber, DEFAULT_PRECISION};
use crate::prime::Prime;
use crate::rational::{format_rational, parse_rational};
use crate::valuation::padic_val_rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("coefficient {value} of x^{degree} is not a p-adic integer")]
    NonIntegralCoefficient { degree: usize, value: BigRational },
    #[error("evaluation point is not a p-adic integer")]
    NotAnInteger,
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// A polynomial `Σ coeffs[i] · X^i` whose coefficients all lie in ℤ_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicPoly {
    prime: Prime,
    coeffs: Vec<BigRational>,
}

impl PadicPoly {
    pub fn new(prime: Prime, mut coeffs: Vec<BigRational>) -> Result<Self, PolyError> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        for (degree, c) in coeffs.iter().enumerate() {
            if padic_val_rat(prime, c) < 0 {
                return Err(PolyError::NonIntegralCoefficient {
                    degree,
                    value: c.clone(),
                });
            }
        }
        Ok(PadicPoly { prime, coeffs })
    }

    pub fn from_integers(prime: Prime, coeffs: &[i64]) -> Result<Self, PolyError> {
        Self::new(
            prime,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    pub fn parse(prime: Prime, s: &str) -> Result<Self, PolyError> {
        Self::new(prime, parse_coefficients(s)?)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> PadicPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        PadicPoly::new(self.prime, coeffs).expect("derivative of an integral polynomial is integral")
    }

    pub fn eval_exact(&self, a: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * a + c)
    }

    /// Horner evaluation at an integral point; coefficients are embedded at the
    /// point's absolute precision.
    pub fn eval(&self, x: &PadicNumber) -> Result<PadicNumber, PolyError> {
        self.check_point(x)?;
        let prec = working_precision(&[x]);
        let mut acc = PadicNumber::zero(self.prime);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(&PadicNumber::from_rational(self.prime, c, prec))?;
        }
        Ok(acc)
    }

    fn check_point(&self, x: &PadicNumber) -> Result<(), PolyError> {
        if x.prime() != self.prime {
            return Err(PadicError::PrimeMismatch(self.prime, x.prime()).into());
        }
        if !x.is_integer() {
            return Err(PolyError::NotAnInteger);
        }
        Ok(())
    }

    /// The `k` with `f(x + y) = f(x) + f'(x)·y + k·y²`, built from the binomial
    /// expansion `(x + y)^n = x^n + n·x^(n-1)·y + y²·Σ_{j≥2} C(n, j)·x^(n-j)·y^(j-2)`.
    pub fn taylor_remainder(&self, x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber, PolyError> {
        self.check_point(x)?;
        self.check_point(y)?;
        let prec = working_precision(&[x, y]);
        let n = self.coeffs.len();
        let xs = powers(x, n, prec);
        let ys = powers(y, n, prec);
        let mut k = PadicNumber::zero(self.prime);
        for (deg, c) in self.coeffs.iter().enumerate().skip(2) {
            let mut binom = BigInt::one();
            for j in 1..=deg {
                // C(deg, j) from C(deg, j - 1)
                binom = binom * BigInt::from(deg - j + 1) / BigInt::from(j);
                if j < 2 {
                    continue;
                }
                let scale = PadicNumber::from_rational(self.prime, &(c * BigRational::from_integer(binom.clone())), prec);
                k = k.add(&scale.mul(&xs[deg - j])?.mul(&ys[j - 2])?)?;
            }
        }
        Ok(k)
    }

    /// The `z` with `f(x) - f(y) = z·(x - y)`, from `x^n - y^n = (x - y)·Σ x^i·y^(n-1-i)`.
    /// No division happens, so `x = y` is fine (then `z = f'(x)`).
    pub fn divided_difference(&self, x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber, PolyError> {
        self.check_point(x)?;
        self.check_point(y)?;
        let prec = working_precision(&[x, y]);
        let n = self.coeffs.len();
        let xs = powers(x, n, prec);
        let ys = powers(y, n, prec);
        let mut z = PadicNumber::zero(self.prime);
        for (deg, c) in self.coeffs.iter().enumerate().skip(1) {
            let c = PadicNumber::from_rational(self.prime, c, prec);
            for i in 0..deg {
                z = z.add(&c.mul(&xs[i])?.mul(&ys[deg - 1 - i])?)?;
            }
        }
        Ok(z)
    }

    pub fn add(&self, other: &PadicPoly) -> PadicPoly {
        assert_eq!(self.prime, other.prime, "polynomials over different primes");
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        PadicPoly::new(self.prime, coeffs).expect("integral")
    }

    pub fn neg(&self) -> PadicPoly {
        PadicPoly {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &PadicPoly) -> PadicPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicPoly) -> PadicPoly {
        assert_eq!(self.prime, other.prime, "polynomials over different primes");
        if self.is_zero() || other.is_zero() {
            return PadicPoly::new(self.prime, vec![]).expect("zero");
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PadicPoly::new(self.prime, coeffs).expect("integral")
    }
}

/// Smallest finite absolute precision among the points, at least 1.
fn working_precision(points: &[&PadicNumber]) -> u32 {
    points
        .iter()
        .filter_map(|x| x.absolute_precision())
        .min()
        .map_or(DEFAULT_PRECISION, |a| a.max(1) as u32)
}

fn powers(x: &PadicNumber, n: usize, prec: u32) -> Vec<PadicNumber> {
    let mut out = Vec::with_capacity(n.max(1));
    out.push(PadicNumber::from_integer(x.prime(), &BigInt::one(), prec));
    for i in 1..n {
        let next = out[i - 1].mul(x).expect("same prime");
        out.push(next);
    }
    out
}

impl fmt::Display for PadicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, sign) {
                (true, "-") => f.write_str("-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            first = false;
            let mag = c.abs();
            let mono = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                d => format!("x^{d}"),
            };
            if mono.is_empty() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// Parses `c`, `c*x^k`, `x^k`, `x` terms joined by `+`/`-` into a coefficient list
/// (index = degree). Whitespace is ignored; `X` is accepted for `x`.
pub fn parse_coefficients(s: &str) -> Result<Vec<BigRational>, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |msg: &str| PolyError::Parse(format!("{msg} in {s:?}"));
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut rest = compact.as_str();
    loop {
        let negative = rest.starts_with('-');
        if let Some(stripped) = rest.strip_prefix(['+', '-']) {
            rest = stripped;
        } else if !terms.is_empty() {
            return Err(bad("expected + or -"));
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (body, tail) = rest.split_at(end);
        if body.is_empty() {
            return Err(bad("empty term"));
        }
        terms.push((negative, body));
        if tail.is_empty() {
            break;
        }
        rest = tail;
    }

    let mut coeffs: Vec<BigRational> = Vec::new();
    for (negative, body) in terms {
        let (coeff, degree) = match body.find(['x', 'X']) {
            None => (parse_rational(body).map_err(|e| bad(&e.to_string()))?, 0usize),
            Some(at) => {
                let (pre, post) = (&body[..at], &body[at + 1..]);
                let coeff = if pre.is_empty() {
                    BigRational::one()
                } else {
                    let c = pre.strip_suffix('*').ok_or_else(|| bad("expected * before x"))?;
                    parse_rational(c).map_err(|e| bad(&e.to_string()))?
                };
                let degree = if post.is_empty() {
                    1
                } else {
                    let d = post.strip_prefix('^').ok_or_else(|| bad("expected ^ after x"))?;
                    if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad("bad exponent"));
                    }
                    d.parse().map_err(|_| bad("exponent too large"))?
                };
                (coeff, degree)
            }
        };
        if degree > 10_000 {
            return Err(bad("degree too large"));
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, BigRational::zero());
        }
        if negative {
            coeffs[degree] -= coeff;
        } else {
            coeffs[degree] += coeff;
        }
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::ExtVal;
    use crate::Form;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(p: u64, s: &str) -> PadicPoly {
        PadicPoly::parse(pr(p), s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_coefficients("x^2 - 6").unwrap(), vec![q(-6, 1), q(0, 1), q(1, 1)]);
        assert_eq!(
            parse_coefficients(" -x^3+ 1/2*x -2x^0 ").unwrap_err(),
            PolyError::Parse("expected * before x in \" -x^3+ 1/2*x -2x^0 \"".into())
        );
        assert_eq!(
            parse_coefficients("-x^3 + 1/2*x - 2*x^0 + x").unwrap(),
            vec![q(-2, 1), q(3, 2), q(0, 1), q(-1, 1)]
        );
        assert_eq!(parse_coefficients("x - x").unwrap(), vec![]);
        assert_eq!(parse_coefficients("7").unwrap(), vec![q(7, 1)]);
        for bad in ["", "x^", "x^-1", "2*", "x**2", "1/0", "3 x", "x ^ 2 ++ 1", "y"] {
            assert!(parse_coefficients(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn integrality_is_enforced() {
        assert!(matches!(
            PadicPoly::parse(pr(5), "x/5"),
            Err(PolyError::Parse(_))
        ));
        assert_eq!(
            PadicPoly::parse(pr(5), "1/5*x + 1").unwrap_err(),
            PolyError::NonIntegralCoefficient { degree: 1, value: q(1, 5) }
        );
        assert!(PadicPoly::parse(pr(5), "1/3*x + 1").is_ok());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2 - 6", "-x^3 + 3/2*x - 2", "x", "7", "0", "2*x^4 + x^2 + 1"] {
            let f = poly(7, s);
            assert_eq!(f.to_string(), s);
            assert_eq!(poly(7, &f.to_string()), f);
        }
    }

    #[test]
    fn eval_examples() {
        let f = poly(5, "x^2 - 6");
        let one = PadicNumber::from_rational(pr(5), &q(1, 1), 8);
        let v = f.eval(&one).unwrap();
        assert_eq!(v.norm(), ExtVal::Finite(1));
        assert!(v.eq_to_precision(&PadicNumber::from_rational(pr(5), &q(-5, 1), 8), 8).unwrap());
        match v.form() {
            Form::Unit { unit, precision, .. } => {
                assert_eq!(*precision, 7);
                assert_eq!(unit, &BigInt::from(5i64.pow(7) - 1));
            }
            other => panic!("{other:?}"),
        }

        let sixteen = PadicNumber::from_rational(pr(5), &q(16, 1), 8);
        let v = f.eval(&sixteen).unwrap();
        assert_eq!(v.norm(), ExtVal::Finite(3));
        assert_eq!(v.reduce_mod(8).unwrap(), BigInt::from(250));

        let seven = poly(5, "7");
        assert_eq!(seven.eval(&sixteen).unwrap().reduce_mod(8).unwrap(), BigInt::from(7));
    }

    #[test]
    fn eval_rejects_non_integers() {
        let f = poly(5, "x^2 - 6");
        let x = PadicNumber::from_rational(pr(5), &q(1, 5), 8);
        assert_eq!(f.eval(&x), Err(PolyError::NotAnInteger));
        let y = PadicNumber::from_rational(pr(3), &q(1, 1), 8);
        assert!(matches!(f.eval(&y), Err(PolyError::Padic(PadicError::PrimeMismatch(..)))));
    }

    #[test]
    fn derivatives() {
        assert_eq!(poly(5, "x^2 - 6").derivative(), poly(5, "2*x"));
        assert!(poly(5, "9").derivative().is_zero());
        assert_eq!(poly(5, "x^3 - 2*x + 1").derivative(), poly(5, "3*x^2 - 2"));
    }

    #[test]
    fn identity_examples() {
        let p = pr(5);
        let x = PadicNumber::from_rational(p, &q(7, 3), 6);
        let y = PadicNumber::from_rational(p, &q(-4, 1), 6);
        let one = PadicNumber::from_rational(p, &q(1, 1), 6);

        let k = poly(5, "x^2").taylor_remainder(&x, &y).unwrap();
        assert!(k.eq_to_precision(&one, 6).unwrap());
        let k = poly(5, "3*x + 2").taylor_remainder(&x, &y).unwrap();
        assert!(k.is_exact_zero());
        let k = poly(5, "x^3").taylor_remainder(&x, &y).unwrap();
        let want = &(&x + &x) + &(&x + &y);
        assert!(k.eq_to_precision(&want, 6).unwrap());

        let z = poly(5, "x^2").divided_difference(&x, &y).unwrap();
        assert!(z.eq_to_precision(&(&x + &y), 6).unwrap());
        let z = poly(5, "x^2").divided_difference(&x, &x).unwrap();
        assert!(z.eq_to_precision(&(&x + &x), 6).unwrap());
    }

    // Independent modular evaluation: coefficient residues by brute-force search.
    fn residue_brute(c: &BigRational, m: u64) -> BigInt {
        let mb = BigInt::from(m);
        (0..m)
            .map(BigInt::from)
            .find(|r| ((c.denom() * r) - c.numer()).mod_floor(&mb).is_zero())
            .expect("p-integral")
    }

    fn eval_mod(f: &PadicPoly, x: &BigInt, m: u64) -> BigInt {
        let mb = BigInt::from(m);
        f.coeffs()
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + residue_brute(c, m)).mod_floor(&mb))
    }

    fn poly_strategy(p: Prime) -> impl Strategy<Value = PadicPoly> {
        prop::collection::vec((-30i64..30, 1i64..20), 0..7).prop_map(move |cs| {
            let cs = cs
                .into_iter()
                .map(|(n, d)| if d % p.get() as i64 == 0 { q(n, d + 1) } else { q(n, d) })
                .collect();
            PadicPoly::new(p, cs).unwrap()
        })
    }

    fn setup() -> impl Strategy<Value = (Prime, PadicPoly, BigRational, BigRational, u32)> {
        prop::sample::select(vec![2u64, 3, 5, 7])
            .prop_map(pr)
            .prop_flat_map(|p| {
                let m = p.get() as i64;
                (
                    Just(p),
                    poly_strategy(p),
                    (-200i64..200, 1i64..50).prop_map(move |(n, d)| q(n, if d % m == 0 { d + 1 } else { d })),
                    (-200i64..200, 1i64..50).prop_map(move |(n, d)| q(n, if d % m == 0 { d + 1 } else { d })),
                    1u32..5,
                )
            })
    }

    proptest! {
        #[test]
        fn taylor_identity_holds((p, f, a, b, n) in setup()) {
            let m = p.get().pow(n);
            let x = PadicNumber::from_rational(p, &a, n);
            let y = PadicNumber::from_rational(p, &b, n);
            let k = f.taylor_remainder(&x, &y).unwrap().reduce_mod(n).unwrap();
            let xr = x.reduce_mod(n).unwrap();
            let yr = y.reduce_mod(n).unwrap();
            let lhs = eval_mod(&f, &(&xr + &yr), m);
            let rhs = eval_mod(&f, &xr, m) + eval_mod(&f.derivative(), &xr, m) * &yr + k * &yr * &yr;
            prop_assert_eq!(lhs, rhs.mod_floor(&BigInt::from(m)));
        }

        #[test]
        fn divided_difference_identity_holds((p, f, a, b, n) in setup()) {
            let m = p.get().pow(n);
            let x = PadicNumber::from_rational(p, &a, n);
            let y = PadicNumber::from_rational(p, &b, n);
            let z = f.divided_difference(&x, &y).unwrap().reduce_mod(n).unwrap();
            let xr = x.reduce_mod(n).unwrap();
            let yr = y.reduce_mod(n).unwrap();
            let lhs = eval_mod(&f, &xr, m) - eval_mod(&f, &yr, m);
            let mb = BigInt::from(m);
            prop_assert_eq!(lhs.mod_floor(&mb), (z * (xr - yr)).mod_floor(&mb));
        }

        #[test]
        fn eval_agrees_with_exact((p, f, a, _b, n) in setup()) {
            let x = PadicNumber::from_rational(p, &a, n);
            let exact = PadicNumber::from_rational(p, &f.eval_exact(&a), n);
            prop_assert!(f.eval(&x).unwrap().eq_to_precision(&exact, n as i64).unwrap());
        }

        #[test]
        fn derivative_is_linear_and_leibniz((p, f, a, _b, _n) in setup(), g_seed in 0u64..1000) {
            let g = PadicPoly::from_integers(p, &[g_seed as i64 % 7, -(g_seed as i64 % 5), 1]).unwrap();
            prop_assert_eq!(f.add(&g).derivative(), f.derivative().add(&g.derivative()));
            prop_assert_eq!(
                f.mul(&g).derivative(),
                f.derivative().mul(&g).add(&f.mul(&g.derivative()))
            );
            let _ = a;
        }

        #[test]
        fn eval_is_ring_homomorphism((p, f, a, _b, n) in setup(), g_seed in 0u64..1000) {
            let g = PadicPoly::from_integers(p, &[g_seed as i64 % 11, 3, -(g_seed as i64 % 4)]).unwrap();
            let x = PadicNumber::from_rational(p, &a, n);
            let fx = f.eval(&x).unwrap();
            let gx = g.eval(&x).unwrap();
            prop_assert!(f.add(&g).eval(&x).unwrap().eq_to_precision(&(&fx + &gx), n as i64).unwrap());
            prop_assert!(f.mul(&g).eval(&x).unwrap().eq_to_precision(&(&fx * &gx), n as i64).unwrap());
        }
    }
}
