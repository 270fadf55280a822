//! Exact p-adic arithmetic with capped precision, polynomials over ℤ_p, and a
//! Hensel-lifting root finder that emits checkable certificates.
//!
//! Everything is built on exact big integers and rationals; there is no floating
//! point anywhere in the library.

pub mod hensel;
pub mod oracle;
pub mod padic;
pub mod poly;
pub mod prime;
pub mod rational;
pub mod valuation;

pub use hensel::{
    check_hypothesis, lift, newton_step, unique_in_neighborhood, verify_certificate, HenselCertificate,
    HenselError, Hypothesis, LiftStep, Verification,
};
pub use oracle::{crosscheck_arith, enumerate_roots, CrosscheckReport, OracleError, OracleReport};
pub use padic::{DigitExpansion, Form, PadicError, PadicNumber, DEFAULT_PRECISION};
pub use poly::{PadicPoly, PolyError};
pub use prime::{Prime, PrimeError};
pub use valuation::{ext_val_rat, padic_norm_rat, padic_val_int, padic_val_rat, ExtVal};
