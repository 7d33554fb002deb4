use serde::Serialize;

use super::check::StepCheck;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gammaexpr::{ge_eval, GammaExpr, GammaSum, Verdict};
use crate::hyper::{f21_eval, f21_eval_real, HypParams};
use crate::mpreal::{BigReal, Precision};

fn q(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

/// 2Γ(1/2)Γ(a+b+1/2)/(Γ(a+1/2)Γ(b+1/2)) ₂F₁(a, b; 1/2; z)
///   = ₂F₁(2a, 2b; a+b+1/2; (1−√z)/2) + ₂F₁(2a, 2b; a+b+1/2; (1+√z)/2)
pub fn verify_zj_split(a: &Rational, b: &Rational, z: &Rational, prec: Precision) -> Result<StepCheck> {
    if !(z.is_positive() && z < &Rational::one()) {
        return Err(Error::Domain(format!("split needs 0 < z < 1, got {z}")));
    }
    let half = q("1/2");
    let s = a + b;
    let inner = prec.plus_bits(16);
    let bits = inner.work_bits();
    let norm = GammaExpr::rational(&q("2"))?
        .mul(&GammaExpr::gamma(&half, 1)?)
        .mul(&GammaExpr::gamma(&(&s + &half), 1)?)
        .mul(&GammaExpr::gamma(&(a + &half), -1)?)
        .mul(&GammaExpr::gamma(&(b + &half), -1)?);
    let lhs = &ge_eval(&norm, inner)? * &f21_eval(&HypParams::new(a.clone(), b.clone(), half.clone())?, z, inner)?;
    let p = HypParams::new(a * &q("2"), b * &q("2"), &s + &half)?;
    let root = BigReal::from_rational(z, bits + 16).sqrt()?;
    let one = BigReal::one(bits + 16);
    let lo = (&one - &root).mul_pow2(-1);
    let hi = (&one + &root).mul_pow2(-1);
    let rhs = &f21_eval_real(&p, &lo, inner)? + &f21_eval_real(&p, &hi, inner)?;
    Ok(StepCheck::compare(format!("split at a = {a}, b = {b}, z = {z}"), &lhs, &rhs, prec))
}

/// ₂F₁(1/2, 3/2; 13/6; −1/3) against the printed closed form and against
/// the form with 7 in place of 6 in the first term.
#[derive(Clone, Debug, Serialize)]
pub struct ConclusionCheck {
    pub printed: StepCheck,
    pub corrected: StepCheck,
}

impl ConclusionCheck {
    /// The verdict for the identity as printed.
    pub fn verdict(&self) -> Verdict {
        self.printed.verdict
    }
}

fn conclusion_rhs(first: i64) -> Result<GammaSum> {
    let t1 = GammaExpr::rational(&Rational::int(first))?
        .mul(&GammaExpr::rat_pow(&q("2"), &q("-2/3"))?)
        .mul(&GammaExpr::rat_pow(&q("3"), &q("-1/2"))?);
    let t2 = GammaExpr::rational(&q("-7"))?
        .mul(&GammaExpr::gamma(&q("1/6"), 3)?)
        .mul(&GammaExpr::rat_pow(&q("2"), &q("-14/3"))?)
        .mul(&GammaExpr::rat_pow(&q("3"), &q("-3/2"))?)
        .mul(&GammaExpr::pi_pow(&q("-3/2")));
    Ok(GammaSum(vec![t1, t2]))
}

/// 6/(2^(2/3)√3) − 7Γ(1/6)³/(2^(14/3) 3^(3/2) π^(3/2))
pub fn conclusion_printed_rhs() -> GammaSum {
    conclusion_rhs(6).expect("well-formed constant")
}

/// 7/(2^(2/3)√3) − 7Γ(1/6)³/(2^(14/3) 3^(3/2) π^(3/2))
pub fn conclusion_corrected_rhs() -> GammaSum {
    conclusion_rhs(7).expect("well-formed constant")
}

pub fn verify_conclusion(prec: Precision) -> Result<ConclusionCheck> {
    let inner = prec.plus_bits(8);
    let lhs = f21_eval(&HypParams::from_strs("1/2", "3/2", "13/6")?, &q("-1/3"), inner)?;
    let printed = conclusion_printed_rhs().eval(inner)?;
    let corrected = conclusion_corrected_rhs().eval(inner)?;
    Ok(ConclusionCheck {
        printed: StepCheck::compare("printed closed form", &lhs, &printed, prec),
        corrected: StepCheck::compare("closed form with first term 7/(2^(2/3)√3)", &lhs, &corrected, prec),
    })
}
