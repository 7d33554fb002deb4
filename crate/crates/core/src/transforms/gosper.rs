//! ₂F₁(1/2, b; 5/2−2b; 1/4) = 2^(2b) √π/3 · Γ(5/2−2b)/Γ(3/2−b)², with the
//! integral steps of its proof checked numerically.

use super::check::StepCheck;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gammaexpr::{ge_eval, GammaExpr};
use crate::hyper::{f21_eval, HypParams};
use crate::mpreal::{
    beta, cos_pi, gamma_bits, pi, pow_rational, tanh_sinh, BigReal, Precision, QuadOptions, QuadPoint,
};

fn q(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

/// The left side's parameters (1/2, b; 5/2−2b).
pub fn gosper_params(b: &Rational) -> Result<HypParams> {
    HypParams::new(q("1/2"), b.clone(), &q("5/2") - &(&q("2") * b))
}

/// 2^(2b) √π/3 · Γ(5/2−2b)/Γ(3/2−b)²
pub fn gosper_rhs(b: &Rational) -> Result<GammaExpr> {
    let c = &q("5/2") - &(&q("2") * b);
    let d = &q("3/2") - b;
    for x in [&c, &d] {
        if x.is_nonpositive_integer() {
            return Err(Error::Pole(format!("Γ({x}) in the closed form at b = {b}")));
        }
    }
    Ok(GammaExpr::rat_pow(&q("2"), &(&q("2") * b))?
        .mul(&GammaExpr::pi_pow(&q("1/2")))
        .mul(&GammaExpr::rational(&q("1/3"))?)
        .mul(&GammaExpr::gamma(&c, 1)?)
        .mul(&GammaExpr::gamma(&d, -2)?))
}

/// The end identity alone, valid wherever the series converges.
pub fn verify_gosper_identity(b: &Rational, prec: Precision) -> Result<StepCheck> {
    let lhs = f21_eval(&gosper_params(b)?, &q("1/4"), prec)?;
    let rhs = ge_eval(&gosper_rhs(b)?, prec)?;
    Ok(StepCheck::compare(format!("identity at b = {b}"), &lhs, &rhs, prec))
}

fn power(x: &BigReal, e: &Rational) -> Result<BigReal> {
    if e.is_zero() {
        Ok(BigReal::one(x.prec()))
    } else {
        pow_rational(x, e)
    }
}

fn integrate<F>(f: F, prec: Precision) -> Result<BigReal>
where
    F: Fn(&QuadPoint) -> Result<BigReal> + Sync,
{
    Ok(tanh_sinh(f, &Rational::zero(), &Rational::one(), prec, &QuadOptions::default())?.value)
}

/// Check each step of the integral proof at `b`, 1/2 < b < 5/6:
///
/// 1. Euler transform and Euler's integral:
///    LHS = (3/4)^(2−3b) Γ(5/2−2b)/(Γ(5/2−3b)Γ(b)) · I₁,
///    I₁ = ∫ t^(3/2−3b) (1−t)^(b−1) (1−t/4)^(2b−2) dt
/// 2. t = 4u/(1+u)²: I₁ = 4^(5/2−3b) I₂, I₂ = ∫ u^(3/2−3b) (1−u)^(2b−1) (1+u+u²)^(2b−2) du
/// 3. (1−u)(1+u+u²) = 1−u³: I₂ = ∫ (u^(3/2−3b) − u^(5/2−3b)) (1−u³)^(2b−2) du
/// 4. v = u³: I₂ = Δ/3, Δ = B(5/6−b, 2b−1) − B(7/6−b, 2b−1)
/// 5. Δ = −Γ(2b−1) Γ(5/6−b) Γ(7/6−b) cos(πb)/π
/// 6. the pieces reassemble into the closed form.
pub fn verify_gosper_proof(b: &Rational, prec: Precision) -> Result<Vec<StepCheck>> {
    if !(b > &q("1/2") && b < &q("5/6")) {
        return Err(Error::Domain(format!("proof steps need 1/2 < b < 5/6, got b = {b}")));
    }
    let inner = prec.plus_bits(16);
    let bits = inner.work_bits();
    let two = q("2");
    let three_b = &q("3") * b;
    let alpha = &q("3/2") - &three_b;
    let e_b1 = b - &Rational::one();
    let e_2b2 = &(&two * b) - &two;
    let e_2b1 = &(&two * b) - &Rational::one();
    let one = BigReal::one(bits + 16);
    let quarter = q("1/4");

    let lhs = f21_eval(&gosper_params(b)?, &quarter, inner)?;
    let k = gamma_bits(&(&q("5/2") - &(&two * b)), bits)?
        .div(&(&gamma_bits(&(&q("5/2") - &three_b), bits)? * &gamma_bits(b, bits)?))?;
    let euler_pre = pow_rational(&BigReal::from_rational(&q("3/4"), bits), &(&two - &three_b))?;

    let i1 = integrate(
        |p| {
            let w = &one - &p.t.mul_rational(&quarter);
            Ok(&(&power(p.from_a, &alpha)? * &power(p.to_b, &e_b1)?) * &power(&w, &e_2b2)?)
        },
        inner,
    )?;
    let i2 = integrate(
        |p| {
            let u = p.t;
            let cyc = &(&one + u) + &(u * u);
            Ok(&(&power(p.from_a, &alpha)? * &power(p.to_b, &e_2b1)?) * &power(&cyc, &e_2b2)?)
        },
        inner,
    )?;
    let i3 = integrate(
        |p| {
            // 1 − u³ = 3s − 3s² + s³ with s = 1 − u
            let s = p.to_b;
            let s2 = s * s;
            let cube = &(&s.mul_rational(&q("3")) - &s2.mul_rational(&q("3"))) + &(&s2 * s);
            let diff = &power(p.from_a, &alpha)? * s;
            Ok(&diff * &power(&cube, &e_2b2)?)
        },
        inner,
    )?;
    let delta = &beta(&(&q("5/6") - b), &e_2b1, inner)? - &beta(&(&q("7/6") - b), &e_2b1, inner)?;
    let pi_v = pi(bits);
    let closed = -&(&(&(&gamma_bits(&e_2b1, bits)? * &gamma_bits(&(&q("5/6") - b), bits)?)
        * &gamma_bits(&(&q("7/6") - b), bits)?)
        * &cos_pi(b, bits))
        .div(&pi_v)?;
    let four_pow = pow_rational(&BigReal::from_int(4, bits), &(&q("5/2") - &three_b))?;

    let step1 = &(&euler_pre * &k) * &i1;
    let assembled = &(&(&euler_pre * &k) * &four_pow) * &closed.mul_rational(&q("1/3"));
    let rhs = ge_eval(&gosper_rhs(b)?, inner)?;
    Ok(vec![
        StepCheck::compare("euler-integral", &lhs, &step1, prec),
        StepCheck::compare("substitution t=4u/(1+u)^2", &i1, &(&four_pow * &i2), prec),
        StepCheck::compare("cyclotomic factorization", &i2, &i3, prec),
        StepCheck::compare("substitution v=u^3", &i3, &delta.mul_rational(&q("1/3")), prec),
        StepCheck::compare("delta closed form", &delta, &closed, prec),
        StepCheck::compare("assembly", &assembled, &rhs, prec),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammaexpr::Verdict;

    #[test]
    fn closed_form_special_values() {
        let p = Precision::digits(40);
        let v = ge_eval(&gosper_rhs(&q("1/2")).unwrap(), p).unwrap();
        assert!(v.overlaps(&pi(p.work_bits()).mul_rational(&q("1/3"))));
        let v = ge_eval(&gosper_rhs(&Rational::zero()).unwrap(), p).unwrap();
        assert!(v.contains_rational(&Rational::one()) || v.overlaps(&BigReal::one(p.work_bits())));
        assert!(matches!(gosper_rhs(&q("3/2")), Err(Error::Pole(_))));
        assert!(matches!(gosper_rhs(&q("7/4")), Err(Error::Pole(_))));
    }

    #[test]
    fn end_identity_at_half() {
        let c = verify_gosper_identity(&q("1/2"), Precision::digits(50)).unwrap();
        assert_eq!(c.verdict, Verdict::EqualWithinBounds);
    }

    #[test]
    fn proof_steps_at_five_eighths() {
        let steps = verify_gosper_proof(&q("5/8"), Precision::digits(30)).unwrap();
        assert_eq!(steps.len(), 6);
        for s in &steps {
            assert!(s.passed(), "{s:?}");
        }
    }

    #[test]
    fn proof_range_enforced() {
        assert!(verify_gosper_proof(&q("1/2"), Precision::digits(20)).is_err());
        assert!(verify_gosper_proof(&q("5/6"), Precision::digits(20)).is_err());
    }
}
