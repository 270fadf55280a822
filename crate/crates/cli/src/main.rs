use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;
use padic_core::hensel::HenselError;
use padic_core::rational::{decimal_string, parse_rational};
use padic_core::valuation::prime_power_rat;
use padic_core::{
    check_hypothesis, crosscheck_arith, enumerate_roots, lift, padic_val_rat, OracleError, PadicError, PadicNumber,
    PadicPoly, PolyError, Prime,
};
use serde_json::json;

/// Exact p-adic arithmetic from the command line.
#[derive(Debug, Parser)]
#[command(name = "padic", version)]
struct Cli {
    /// The prime p.
    #[arg(short = 'p', long = "prime", global = true)]
    prime: Option<u64>,

    /// Relative precision N (digits kept in the unit part).
    #[arg(short = 'N', long = "precision", global = true, default_value_t = padic_core::DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(1..))]
    precision: u32,

    /// Target absolute precision K for `lift`.
    #[arg(short = 'K', long = "target", global = true)]
    target: Option<u32>,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p-adic valuation of a rational (0 maps to 0).
    Val { q: String },
    /// p-adic norm of a rational, exactly and as a decimal.
    Norm { q: String },
    /// Digit expansion of a nonzero rational, most significant digit first.
    Digits { q: String },
    /// Evaluate a polynomial at a p-adic integer.
    Eval {
        #[arg(long)]
        poly: String,
        x: String,
    },
    /// Hensel-lift a seed to a root mod p^K and print the certificate.
    Lift {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        seed: String,
    },
    /// List every root of f mod p^k by exhaustive scan.
    Oracle {
        #[arg(short = 'k')]
        k: u32,
        #[arg(long)]
        poly: String,
    },
    /// Compare p-adic ring operations with rational arithmetic mod p^k.
    Crosscheck {
        #[arg(short = 'k', default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

const PARSE: u8 = 2;
const NOT_PRIME: u8 = 3;
const ZERO_EXPANSION: u8 = 4;
const HYPOTHESIS: u8 = 5;
const INTERNAL: u8 = 6;
const DOMAIN: u8 = 7;

fn rational(s: &str) -> Result<BigRational, Failure> {
    parse_rational(s).map_err(|e| Failure::new(PARSE, e.to_string()))
}

fn polynomial(p: Prime, s: &str) -> Result<PadicPoly, Failure> {
    PadicPoly::parse(p, s).map_err(|e| Failure::new(PARSE, e.to_string()))
}

fn padic_failure(e: PadicError) -> Failure {
    match e {
        PadicError::ZeroHasNoExpansion => Failure::new(ZERO_EXPANSION, e.to_string()),
        PadicError::NotAnInteger | PadicError::Record(_) => Failure::new(PARSE, e.to_string()),
        _ => Failure::new(INTERNAL, e.to_string()),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::DomainTooLarge { .. } => Failure::new(DOMAIN, e.to_string()),
        OracleError::ZeroExponent => Failure::new(PARSE, e.to_string()),
    }
}

fn hypothesis_report(f: &PadicPoly, a: &BigRational, m: u64, e: u64) -> String {
    let fa = f.eval_exact(a);
    let fpa = f.derivative().eval_exact(a);
    format!(
        "hypothesis fails: f({a}) = {fa} (m = {m}), f'({a}) = {fpa} (e = {e}), m = {m} <= 2e = {}",
        2 * e
    )
}

fn run(cli: Cli) -> Result<String, Failure> {
    let p = cli
        .prime
        .ok_or_else(|| Failure::new(PARSE, "missing -p <prime>"))?;
    let p = Prime::new(p).map_err(|e| Failure::new(NOT_PRIME, e.to_string()))?;
    let n = cli.precision;

    match cli.command {
        Command::Val { q } => {
            let q = rational(&q)?;
            let v = padic_val_rat(p, &q);
            Ok(if cli.json {
                json!({ "p": p, "q": q.to_string(), "valuation": v }).to_string()
            } else {
                v.to_string()
            })
        }
        Command::Norm { q } => {
            let q = rational(&q)?;
            let (norm, power) = if q.is_zero() {
                (BigRational::zero(), None)
            } else {
                let v = padic_val_rat(p, &q);
                (prime_power_rat(p, -v), Some(format!("{p}^{}", -v)))
            };
            let decimal = decimal_string(&norm, 40);
            Ok(if cli.json {
                json!({ "p": p, "q": q.to_string(), "norm": norm.to_string(), "power": power, "decimal": decimal })
                    .to_string()
            } else {
                match power {
                    None => "0".to_string(),
                    Some(power) => format!("{norm} = {power} = {decimal}"),
                }
            })
        }
        Command::Digits { q } => {
            let q = rational(&q)?;
            let x = PadicNumber::from_rational(p, &q, n);
            let d = x.digits().map_err(padic_failure)?;
            Ok(if cli.json {
                json!({ "p": p, "N": n, "start": d.start, "digits": d.digits, "display": d.to_string() }).to_string()
            } else {
                d.to_string()
            })
        }
        Command::Eval { poly, x } => {
            let f = polynomial(p, &poly)?;
            let x = rational(&x)?;
            let value = f
                .eval(&PadicNumber::from_rational(p, &x, n))
                .map_err(|e| match e {
                    PolyError::Padic(e) => padic_failure(e),
                    other => Failure::new(PARSE, other.to_string()),
                })?;
            let digits = value.digits().ok().map(|d| d.to_string());
            Ok(if cli.json {
                json!({ "p": p, "f": f.to_string(), "x": x.to_string(), "value": value, "digits": digits })
                    .to_string()
            } else {
                match digits {
                    Some(d) => format!("{}\n{d}", value.to_record()),
                    None => value.to_record(),
                }
            })
        }
        Command::Lift { poly, seed } => {
            let k = cli
                .target
                .ok_or_else(|| Failure::new(PARSE, "lift needs -K <target precision>"))?;
            let f = polynomial(p, &poly)?;
            let a = rational(&seed)?;
            let cert = lift(&f, &a, k).map_err(|e| match e {
                HenselError::HypothesisFailed { m, e } => Failure::new(HYPOTHESIS, hypothesis_report(&f, &a, m, e)),
                HenselError::InternalBoundViolation(_) | HenselError::CorrectionNotIntegral => {
                    Failure::new(INTERNAL, e.to_string())
                }
                HenselError::Record(_) => Failure::new(PARSE, e.to_string()),
                other => {
                    let detail = check_hypothesis(&f, &a)
                        .map(|h| format!(" (e = {}, m = {})", h.e, h.m.map_or("inf".into(), |m| m.to_string())))
                        .unwrap_or_default();
                    Failure::new(HYPOTHESIS, format!("{other}{detail}"))
                }
            })?;
            Ok(if cli.json {
                cert.to_json()
            } else {
                cert.to_text().trim_end().to_string()
            })
        }
        Command::Oracle { k, poly } => {
            let f = polynomial(p, &poly)?;
            let report = enumerate_roots(&f, k).map_err(oracle_failure)?;
            Ok(if cli.json {
                serde_json::to_string(&report).expect("report serializes")
            } else {
                report.roots.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            })
        }
        Command::Crosscheck { k, trials, seed } => {
            let report = crosscheck_arith(p, k, trials, seed).map_err(oracle_failure)?;
            let out = if cli.json {
                serde_json::to_string(&report).expect("report serializes")
            } else {
                let mut s = format!("p={} k={} trials={} mismatches={}", report.p, report.k, report.trials, report.mismatches.len());
                for m in &report.mismatches {
                    s.push_str(&format!("\n{:?} x={} y={} expected={} got={}", m.op, m.x, m.y, m.expected, m.got));
                }
                s
            };
            if report.mismatches.is_empty() {
                Ok(out)
            } else {
                Err(Failure::new(INTERNAL, out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
