//! `hypcheck`: evaluate ₂F₁ values and verify identities from the command line.
//!
//! Exit codes: 0 everything passed, 1 something failed, 2 something stayed
//! inconclusive, 3 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypcheck::catalog::{bundled_catalog, catalog_load, run_records, IdentityRecord};
use hypcheck::gammaexpr::ge_eval;
use hypcheck::hyper::{f21_eval_integral, f21_eval_with, f21_integral, f21_series_rational, EvalOptions, Evaluation};
use hypcheck::hyper::{Strategy, DEFAULT_TERM_CAP};
use hypcheck::mpreal::{beta, pow_rational, tanh_sinh, QuadOptions};
use hypcheck::transforms::{derive_main, verify_gosper_proof, StepCheck};
use hypcheck::{BigReal, Error, GammaExpr, HypParams, Precision, Rational, Verdict};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "hypcheck", version, about = "Rigorous ₂F₁ evaluation and identity verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Series,
    Integral,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuadExpr {
    /// ∫₀¹ t^(x−1)(1−t)^(y−1) dt against Γ(x)Γ(y)/Γ(x+y)
    Beta,
    /// Euler integral for ₂F₁(a,b;c;1) against Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))
    Euler,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate ₂F₁(a, b; c; z) with a rigorous error bound.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true)]
        z: Rational,
        #[arg(long, default_value_t = 100)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
    /// Verify the records of an identity catalog.
    Verify {
        /// catalog file; the bundled catalog when omitted
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        digits: u32,
        /// verify only this id (repeatable)
        #[arg(long)]
        only: Vec<String>,
        /// worker threads; defaults to the number of CPUs
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
    /// Run the transformation chain behind the degree-12 evaluation.
    DeriveChain {
        #[arg(long, default_value_t = 150)]
        digits: u32,
        /// write the full derivation trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
    /// Check each step of the integral proof of the Gosper ¼-identity.
    ProofCheck {
        #[arg(long, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
    /// Cross-check tanh-sinh quadrature against closed Γ forms.
    Quadcheck {
        #[arg(long, value_enum)]
        expr: QuadExpr,
        #[arg(long, default_value = "1/3")]
        x: Rational,
        #[arg(long, default_value = "1/2")]
        y: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "1/3")]
        a: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
        b: Rational,
        #[arg(long, default_value = "2")]
        c: Rational,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    let code = match cli.cmd {
        Cmd::Eval { a, b, c, z, digits, strategy, report } => eval(a, b, c, z, digits, strategy, report),
        Cmd::Verify { catalog, digits, only, jobs, report } => verify(catalog, digits, &only, jobs, report),
        Cmd::DeriveChain { digits, trace, report } => derive_chain(digits, trace, report),
        Cmd::ProofCheck { b, digits, report } => proof_check(&b, digits, report),
        Cmd::Quadcheck { expr, x, y, a, b, c, digits, report } => quadcheck(expr, [x, y], [a, b, c], digits, report),
    };
    ExitCode::from(code)
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::TermCap(_) | Error::QuadratureNonConvergence { .. } => INCONCLUSIVE,
        Error::ParseRational(_) | Error::Domain(_) | Error::Pole(_) | Error::NoStrategy(_) | Error::Catalog(_) => USAGE,
        _ => FAIL,
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::EqualWithinBounds => PASS,
        Verdict::Distinct => FAIL,
        Verdict::Inconclusive => INCONCLUSIVE,
    }
}

/// Worst verdict over a list of checks.
fn overall(checks: &[StepCheck]) -> Verdict {
    if checks.iter().any(|c| c.verdict == Verdict::Distinct) {
        Verdict::Distinct
    } else if checks.iter().all(StepCheck::passed) {
        Verdict::EqualWithinBounds
    } else {
        Verdict::Inconclusive
    }
}

fn print_checks(checks: &[StepCheck]) {
    let width = checks.iter().map(|c| c.step.chars().count()).max().unwrap_or(0);
    for c in checks {
        println!("{:<width$}  {} ({} digits)", c.step, c.verdict, c.agreement_digits);
        if c.verdict != Verdict::EqualWithinBounds && !c.lhs.is_empty() {
            println!("    lhs {}\n    rhs {}", c.lhs, c.rhs);
        }
    }
}

fn split_bound(x: &BigReal, digits: u32) -> (String, String) {
    let s = x.to_decimal_with_bound(digits as usize + 2);
    match s.split_once(" ± ") {
        Some((v, b)) => (v.to_string(), b.to_string()),
        None => (s, String::new()),
    }
}

fn eval(a: Rational, b: Rational, c: Rational, z: Rational, digits: u32, how: StrategyArg, report: Report) -> u8 {
    let prec = Precision::digits(digits);
    let run = || -> hypcheck::Result<Evaluation> {
        let p = HypParams::new(a.clone(), b.clone(), c.clone())?;
        match how {
            StrategyArg::Auto => f21_eval_with(&p, &z, prec, &EvalOptions::default()),
            StrategyArg::Series => {
                if z.abs() >= Rational::one() && p.termination().is_none() {
                    return Err(Error::NoStrategy(format!("series diverges or converges too slowly at z = {z}")));
                }
                let s = f21_series_rational(&p, &z, prec, DEFAULT_TERM_CAP)?;
                Ok(Evaluation { value: s.value, strategy: Strategy::Series { terms: s.terms }, cross_checked: false })
            }
            StrategyArg::Integral => f21_eval_integral(&p, &z, prec),
        }
    };
    let ev = match run() {
        Ok(ev) => ev,
        Err(e) => return fail(&e),
    };
    let (value, bound) = split_bound(&ev.value, digits);
    match report {
        Report::Text => {
            println!("2F1({a}, {b}; {c}; {z})");
            println!("  = {value} ± {bound}");
            println!("  via {}", ev.strategy);
        }
        Report::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "params": {"a": a.to_string(), "b": b.to_string(), "c": c.to_string()},
                "z": z.to_string(),
                "value": value,
                "bound": bound,
                "digits": digits,
                "strategy": ev.strategy.to_string(),
                "cross_checked": ev.cross_checked,
            }))
            .expect("json")
        ),
    }
    if prec.is_met_by(&ev.value) {
        PASS
    } else {
        eprintln!("warning: bound is wider than the requested {digits} digits");
        INCONCLUSIVE
    }
}

fn verify(catalog: Option<PathBuf>, digits: u32, only: &[String], jobs: Option<usize>, report: Report) -> u8 {
    let records: Vec<IdentityRecord> = match catalog {
        Some(path) => match catalog_load(&path) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        },
        None => bundled_catalog(),
    };
    let selected: Vec<IdentityRecord> = if only.is_empty() {
        records
    } else {
        if let Some(missing) = only.iter().find(|id| !records.iter().any(|r| &r.id == *id)) {
            eprintln!("error: no record with id {missing:?}");
            return USAGE;
        }
        records.into_iter().filter(|r| only.contains(&r.id)).collect()
    };
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let rep = match run_records(&selected, Precision::digits(digits), jobs) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    match report {
        Report::Text => print!("{}", rep.to_text()),
        Report::Json => println!("{}", rep.to_json()),
    }
    rep.exit_code() as u8
}

fn derive_chain(digits: u32, trace: Option<PathBuf>, report: Report) -> u8 {
    let prec = Precision::digits(digits);
    let tr = match derive_main(prec) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let text = serde_json::to_string_pretty(&tr).expect("trace serializes");
    if let Some(path) = &trace {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: {}: {e}", path.display());
            return USAGE;
        }
    }
    let verdict = tr.verdict();
    match report {
        Report::Json => println!("{text}"),
        Report::Text => {
            println!("seed: {}", tr.seed);
            for s in &tr.steps {
                println!("  {:<6} {}", s.rule, s.term);
            }
            println!("final parameters: {}", tr.final_params);
            println!("final argument: {} (matches printed: {})", tr.final_argument, tr.argument_matches_printed);
            println!("final constant: {}", tr.final_constant);
            match ge_eval(&tr.final_constant, prec) {
                Ok(v) => println!("  ≈ {}", v.to_decimal_with_bound(digits as usize + 2)),
                Err(e) => println!("  (cannot evaluate: {e})"),
            }
            print_checks(&tr.checks);
            println!("verdict: {verdict}");
        }
    }
    verdict_code(verdict)
}

fn proof_check(b: &Rational, digits: u32, report: Report) -> u8 {
    let checks = match verify_gosper_proof(b, Precision::digits(digits)) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let verdict = overall(&checks);
    match report {
        Report::Text => {
            print_checks(&checks);
            println!("verdict: {verdict}");
        }
        Report::Json => println!(
            "{}",
            serde_json::to_string_pretty(
                &json!({"b": b.to_string(), "digits": digits, "steps": checks, "verdict": verdict})
            )
            .expect("json")
        ),
    }
    verdict_code(verdict)
}

fn quadcheck(expr: QuadExpr, [x, y]: [Rational; 2], [a, b, c]: [Rational; 3], digits: u32, report: Report) -> u8 {
    let prec = Precision::digits(digits);
    let run = || -> hypcheck::Result<StepCheck> {
        match expr {
            QuadExpr::Beta => {
                if !x.is_positive() || !y.is_positive() {
                    return Err(Error::Domain("the Beta integral needs x, y > 0".into()));
                }
                let (ex, ey) = (&x - &Rational::one(), &y - &Rational::one());
                let pw = |v: &BigReal, e: &Rational| {
                    if e.is_zero() {
                        Ok(BigReal::one(v.prec()))
                    } else {
                        pow_rational(v, e)
                    }
                };
                let quad = tanh_sinh(
                    |pt| Ok(&pw(pt.from_a, &ex)? * &pw(pt.to_b, &ey)?),
                    &Rational::zero(),
                    &Rational::one(),
                    prec,
                    &QuadOptions::default(),
                )?;
                Ok(StepCheck::compare(format!("B({x}, {y})"), &quad.value, &beta(&x, &y, prec)?, prec))
            }
            QuadExpr::Euler => {
                let p = HypParams::new(a.clone(), b.clone(), c.clone())?;
                if !(b.is_positive() && c > b && p.excess().is_positive()) {
                    return Err(Error::Domain("the Euler integral at z = 1 needs c > b > 0 and c − a − b > 0".into()));
                }
                let quad = f21_integral(&p, &BigReal::one(prec.work_bits()), prec)?;
                let closed = GammaExpr::gamma(&c, 1)?
                    .mul(&GammaExpr::gamma(&p.excess(), 1)?)
                    .mul(&GammaExpr::gamma(&(&c - &a), -1)?)
                    .mul(&GammaExpr::gamma(&(&c - &b), -1)?);
                Ok(StepCheck::compare(format!("2F1{p} at z = 1"), &quad, &ge_eval(&closed, prec)?, prec))
            }
        }
    };
    let check = match run() {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    match report {
        Report::Text => {
            println!("{}: {} ({} digits)", check.step, check.verdict, check.agreement_digits);
            println!("    quadrature {}\n    closed     {}", check.lhs, check.rhs);
        }
        Report::Json => println!("{}", serde_json::to_string_pretty(&check).expect("json")),
    }
    verdict_code(check.verdict)
}
