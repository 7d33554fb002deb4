//! Built-in parametric families and structural checks.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Parameters, Rhs};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gammaexpr::{ge_eval, GammaExpr, Verdict};
use crate::hyper::{f21_eval, f21_integral, f21_terminating, HypParams};
use crate::mpreal::{beta, pow_rational, tanh_sinh, BigReal, Precision, QuadOptions};
use crate::transforms::{
    derive_main, rule_soundness, verify_gosper_identity, verify_gosper_proof, verify_zj_split, StepCheck, TransformRule,
};

/// What a check produced: numerical comparisons, or an exact comparison
/// with the list of mismatches.
pub(crate) enum Evidence {
    Numeric(Vec<StepCheck>),
    Exact { mismatches: Vec<String> },
}

fn q(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

/// Uniform rational in [lo, hi] with denominator at most `max_den`.
fn draw(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let d = Rational::int(den);
    let a = -(-(lo * &d)).floor();
    let b = (hi * &d).floor();
    let (a, b) = (a.to_i64().expect("small range"), b.to_i64().expect("small range"));
    let n = if a > b { a } else { rng.gen_range(a..=b) };
    Rational::new(n, den).expect("nonzero")
}

/// Γ-quotient Π Γ(num_i) / Π Γ(den_j), or None if any argument is a pole.
fn gamma_quotient(num: &[Rational], den: &[Rational]) -> Option<GammaExpr> {
    let mut e = GammaExpr::one();
    for x in num {
        e = e.mul(&GammaExpr::gamma(x, 1).ok()?);
    }
    for x in den {
        e = e.mul(&GammaExpr::gamma(x, -1).ok()?);
    }
    Some(e)
}

fn compare(label: String, lhs: &BigReal, rhs: &GammaExpr, prec: Precision) -> Result<StepCheck> {
    Ok(StepCheck::compare(label, lhs, &ge_eval(rhs, prec)?, prec))
}

/// Draw until `make` yields a sample (it returns None to reject one).
fn sample_checks<F>(samples: usize, seed: u64, prec: Precision, mut make: F) -> Result<Vec<StepCheck>>
where
    F: FnMut(&mut ChaCha8Rng) -> Option<(HypParams, Rational, GammaExpr)>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut tries = 0;
    while out.len() < samples {
        tries += 1;
        if tries > 1000 * (samples + 1) {
            return Err(Error::Catalog("could not draw enough valid samples".into()));
        }
        let Some((p, z, rhs)) = make(&mut rng) else { continue };
        let lhs = f21_eval(&p, &z, prec)?;
        out.push(compare(format!("{p} at z = {z}"), &lhs, &rhs, prec)?);
    }
    Ok(out)
}

fn gauss(samples: usize, seed: u64, prec: Precision) -> Result<Vec<StepCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let one = BigReal::one(prec.work_bits());
    while out.len() < samples {
        // c > b > 0 and c − a − b > 0 so the Beta integral at z = 1 converges
        let b = draw(&mut rng, &q("1/12"), &q("2"), 12);
        let d = draw(&mut rng, &q("1/12"), &q("3"), 12);
        let e = draw(&mut rng, &q("1/12"), &q("2"), 12);
        let c = &b + &d;
        let a = &(&c - &b) - &e;
        let Ok(p) = HypParams::new(a.clone(), b.clone(), c.clone()) else { continue };
        let Some(rhs) = gamma_quotient(&[c.clone(), e], &[&c - &a, d]) else { continue };
        let lhs = f21_integral(&p, &one, prec)?;
        out.push(compare(format!("{p} at z = 1"), &lhs, &rhs, prec)?);
    }
    Ok(out)
}

fn gauss_second(samples: usize, seed: u64, prec: Precision) -> Result<Vec<StepCheck>> {
    sample_checks(samples, seed, prec, |rng| {
        let a = draw(rng, &q("-2"), &q("3"), 12);
        let b = draw(rng, &q("-2"), &q("3"), 12);
        let c = &(&(&a + &b) + &Rational::one()) * &q("1/2");
        let p = HypParams::new(a.clone(), b.clone(), c.clone()).ok()?;
        let g = gamma_quotient(&[c], &[&(&a + &Rational::one()) * &q("1/2"), &(&b + &Rational::one()) * &q("1/2")])?;
        Some((p, q("1/2"), g.mul(&GammaExpr::pi_pow(&q("1/2")))))
    })
}

fn bailey(samples: usize, seed: u64, prec: Precision) -> Result<Vec<StepCheck>> {
    sample_checks(samples, seed, prec, |rng| {
        let a = draw(rng, &q("-2"), &q("3"), 12);
        let c = draw(rng, &q("-2"), &q("4"), 12);
        let p = HypParams::new(a.clone(), &Rational::one() - &a, c.clone()).ok()?;
        let half = q("1/2");
        let rhs = gamma_quotient(
            &[&c * &half, &(&c + &Rational::one()) * &half],
            &[&(&a + &c) * &half, &(&(&Rational::one() - &a) + &c) * &half],
        )?;
        Some((p, half, rhs))
    })
}

fn kummer(samples: usize, seed: u64, prec: Precision) -> Result<Vec<StepCheck>> {
    sample_checks(samples, seed, prec, |rng| {
        let a = draw(rng, &q("-2"), &q("3"), 12);
        // the series at −1 converges for c − a − b = 1 − 2b > −1
        let b = draw(rng, &q("-2"), &q("11/12"), 12);
        let one = Rational::one();
        let c = &(&one + &a) - &b;
        let p = HypParams::new(a.clone(), b.clone(), c.clone()).ok()?;
        let half_a = &a * &q("1/2");
        let rhs = gamma_quotient(&[c, &one + &half_a], &[&one + &a, &(&one + &half_a) - &b])?;
        Some((p, q("-1"), rhs))
    })
}

fn beta_integral(samples: usize, seed: u64, prec: Precision) -> Result<Vec<StepCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = draw(&mut rng, &q("1/12"), &q("3"), 12);
        let y = draw(&mut rng, &q("1/12"), &q("3"), 12);
        let (ex, ey) = (&x - &Rational::one(), &y - &Rational::one());
        let pw = |v: &BigReal, e: &Rational| if e.is_zero() { Ok(BigReal::one(v.prec())) } else { pow_rational(v, e) };
        let quad = tanh_sinh(
            |pt| Ok(&pw(pt.from_a, &ex)? * &pw(pt.to_b, &ey)?),
            &Rational::zero(),
            &Rational::one(),
            prec,
            &QuadOptions::default(),
        )?;
        out.push(StepCheck::compare(format!("B({x}, {y})"), &quad.value, &beta(&x, &y, prec)?, prec));
    }
    Ok(out)
}

fn apagodu_zeilberger(n_max: u64, rhs: &Rhs) -> Result<Vec<String>> {
    let Rhs::PochRatio { base, ratio } = rhs else {
        return Err(Error::Catalog("apagodu-zeilberger needs a poch_ratio right side".into()));
    };
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let nn = Rational::int(n);
        let p = HypParams::new(-&nn, &(-&nn) - &q("1/2"), &(&q("4") * &nn) + &q("9/2"))?;
        let lhs = f21_terminating(&p, &q("1/5"))?;
        let rhs = base.powi(n as i64)? * ratio.eval(n)?;
        if lhs != rhs {
            bad.push(format!("n = {n}: {lhs} ≠ {rhs}"));
        }
    }
    Ok(bad)
}

fn gosper_strange(a_list: &[Rational], b_list: &[Rational], prec: Precision) -> Result<Vec<StepCheck>> {
    let mut out = Vec::new();
    for a in a_list {
        for b in b_list {
            let s = a + b;
            let p = HypParams::new(&Rational::one() - a, b.clone(), b + &q("2"))?;
            let z = b / &s;
            let rhs = GammaExpr::rational(&(b + &Rational::one()))?.mul(&GammaExpr::rat_pow(&(a / &s), a)?);
            let lhs = f21_eval(&p, &z, prec)?;
            out.push(compare(format!("a = {a}, b = {b}"), &lhs, &rhs, prec)?);
        }
    }
    Ok(out)
}

pub(crate) fn evidence(params: &Parameters, prec: Precision) -> Result<Evidence> {
    use Parameters as P;
    let checks = match params {
        P::Gauss { samples, seed } => gauss(*samples, *seed, prec)?,
        P::GaussSecond { samples, seed } => gauss_second(*samples, *seed, prec)?,
        P::Bailey { samples, seed } => bailey(*samples, *seed, prec)?,
        P::Kummer { samples, seed } => kummer(*samples, *seed, prec)?,
        P::BetaIntegral { samples, seed } => beta_integral(*samples, *seed, prec)?,
        P::ApagoduZeilberger { n_max, rhs } => {
            return Ok(Evidence::Exact { mismatches: apagodu_zeilberger(*n_max, rhs)? })
        }
        P::GosperStrange { a, b } => gosper_strange(a, b, prec)?,
        P::GosperQuarter { b } => b.iter().map(|b| verify_gosper_identity(b, prec)).collect::<Result<_>>()?,
        P::ZjSplit { points } => {
            points.iter().map(|[a, b, z]| verify_zj_split(a, b, z, prec)).collect::<Result<_>>()?
        }
        P::Rule { rule, samples, seed } => {
            let r = TransformRule::by_name(rule).ok_or_else(|| Error::Catalog(format!("unknown rule {rule:?}")))?;
            rule_soundness(&r, *samples, prec, *seed)?
                .into_iter()
                .map(|s| StepCheck {
                    step: format!("{} at w = {}", s.params, s.w),
                    verdict: s.verdict,
                    lhs: String::new(),
                    rhs: String::new(),
                    agreement_digits: if s.verdict == Verdict::EqualWithinBounds { prec.target_digits() } else { 0 },
                })
                .collect()
        }
        P::MainChain => {
            let tr = derive_main(prec)?;
            if !tr.argument_matches_printed {
                return Err(Error::Derivation("composed argument differs from the printed one".into()));
            }
            tr.checks
        }
        P::GosperProof { b } => {
            let mut all = Vec::new();
            for b in b {
                for mut s in verify_gosper_proof(b, prec)? {
                    s.step = format!("b = {b}: {}", s.step);
                    all.push(s);
                }
            }
            all
        }
    };
    Ok(Evidence::Numeric(checks))
}
