use serde::Serialize;

use super::integral::f21_integral;
use super::series::{f21_series, f21_series_rational, f21_terminating, DEFAULT_TERM_CAP};
use super::HypParams;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::mpreal::{pow_rational, BigReal, Precision};

/// How a value was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Terminating,
    Series {
        terms: usize,
    },
    /// Euler integral with the given (a, b; c) ordering, possibly after the
    /// Euler transformation (c−a, c−b; c).
    Integral {
        params: String,
        euler_transformed: bool,
    },
    /// z ↦ z/(z−1) followed by the inner strategy.
    Pfaff {
        inner: Box<Strategy>,
    },
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Terminating => write!(f, "terminating"),
            Strategy::Series { terms } => write!(f, "series ({terms} terms)"),
            Strategy::Integral { params, euler_transformed: false } => write!(f, "euler-integral {params}"),
            Strategy::Integral { params, euler_transformed: true } => {
                write!(f, "euler-integral {params} after Euler transformation")
            }
            Strategy::Pfaff { inner } => write!(f, "pfaff, then {inner}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub term_cap: usize,
    /// largest |z| summed directly
    pub series_radius: Rational,
    /// Evaluate both series and integral and compare them when the target
    /// is at most this many digits.
    pub cross_check_digits: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { term_cap: DEFAULT_TERM_CAP, series_radius: Rational::frac(9, 10), cross_check_digits: 20 }
    }
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: BigReal,
    pub strategy: Strategy,
    pub cross_checked: bool,
}

/// Candidate (parameters, prefactor exponent of (1−z)) for the Euler integral.
fn integral_candidate(p: &HypParams) -> Option<(HypParams, bool)> {
    let ok = |q: &HypParams| q.b.is_positive() && q.c > q.b;
    let euler = HypParams { a: &p.c - &p.a, b: &p.c - &p.b, c: p.c.clone() };
    [(p.clone(), false), (p.swapped(), false), (euler.clone(), true), (euler.swapped(), true)]
        .into_iter()
        .find(|(q, _)| ok(q))
}

fn via_integral(p: &HypParams, z: &Rational, prec: Precision) -> Result<Evaluation> {
    let (q, euler) = integral_candidate(p)
        .ok_or_else(|| Error::NoStrategy(format!("{p} at z = {z}: no ordering with c > b > 0")))?;
    let bits = prec.work_bits();
    let zr = BigReal::from_rational(z, bits + 16);
    let mut v = f21_integral(&q, &zr, prec.plus_bits(16))?;
    if euler {
        let base = BigReal::from_rational(&(Rational::one() - z), bits + 16);
        v = &v * &pow_rational(&base, &p.excess())?;
    }
    Ok(Evaluation {
        value: v.with_prec(bits),
        strategy: Strategy::Integral { params: q.to_string(), euler_transformed: euler },
        cross_checked: false,
    })
}

/// ₂F₁ by the Euler integral alone (after reordering or the Euler
/// transformation where needed), bypassing the dispatcher.
pub fn f21_eval_integral(p: &HypParams, z: &Rational, prec: Precision) -> Result<Evaluation> {
    if z >= &Rational::one() {
        return Err(Error::NoStrategy(format!("{p} at z = {z} ≥ 1")));
    }
    via_integral(p, z, prec)
}

/// ₂F₁(a, b; c; z) for rational z < 1, choosing the evaluation route.
pub fn f21_eval(p: &HypParams, z: &Rational, prec: Precision) -> Result<BigReal> {
    Ok(f21_eval_with(p, z, prec, &EvalOptions::default())?.value)
}

pub fn f21_eval_with(p: &HypParams, z: &Rational, prec: Precision, opts: &EvalOptions) -> Result<Evaluation> {
    let bits = prec.work_bits();
    if p.termination().is_some() {
        let v = f21_terminating(p, z)?;
        return Ok(Evaluation {
            value: BigReal::from_rational(&v, bits),
            strategy: Strategy::Terminating,
            cross_checked: false,
        });
    }
    if p.c.is_nonpositive_integer() {
        return Err(Error::Pole(format!("lower parameter c = {}", p.c)));
    }
    if z >= &Rational::one() {
        return Err(Error::NoStrategy(format!("non-terminating {p} at z = {z} ≥ 1")));
    }
    if z.abs() <= opts.series_radius {
        let s = f21_series_rational(p, z, prec, opts.term_cap)?;
        let mut out =
            Evaluation { value: s.value, strategy: Strategy::Series { terms: s.terms }, cross_checked: false };
        if !z.is_zero() && prec.target_digits() <= opts.cross_check_digits && integral_candidate(p).is_some() {
            let other = via_integral(p, z, prec)?;
            if !other.value.overlaps(&out.value) {
                return Err(Error::StrategyMismatch(format!(
                    "{p} at z = {z}: series {} vs integral {}",
                    out.value.to_decimal_with_bound(20),
                    other.value.to_decimal_with_bound(20)
                )));
            }
            out.cross_checked = true;
        }
        return Ok(out);
    }
    if z.is_negative() {
        // Pfaff: F(a,b;c;z) = (1−z)^(−a) F(a, c−b; c; z/(z−1)); keep whichever
        // upper parameter makes the transformed series terminate, if any.
        let one_minus_z = Rational::one() - z;
        let w = z / &(z - &Rational::one());
        let keep_a = HypParams { a: p.a.clone(), b: &p.c - &p.b, c: p.c.clone() };
        let keep_b = HypParams { a: &p.c - &p.a, b: p.b.clone(), c: p.c.clone() };
        let (q, e) = if keep_a.termination().is_none() && keep_b.termination().is_some() {
            (keep_b, -&p.b)
        } else {
            (keep_a, -&p.a)
        };
        let inner = f21_eval_with(&q, &w, prec.plus_bits(8), opts)?;
        let pre = pow_rational(&BigReal::from_rational(&one_minus_z, bits + 8), &e)?;
        return Ok(Evaluation {
            value: (&pre * &inner.value).with_prec(bits),
            strategy: Strategy::Pfaff { inner: Box::new(inner.strategy) },
            cross_checked: inner.cross_checked,
        });
    }
    via_integral(p, z, prec)
}

/// ₂F₁ at a real (interval) argument: the series for |z| ≤ 9/10, otherwise
/// the Euler integral for 9/10 < z < 1. Used where the argument is
/// irrational, e.g. (1 ± √z)/2.
pub fn f21_eval_real(p: &HypParams, z: &BigReal, prec: Precision) -> Result<BigReal> {
    let radius = BigReal::from_rational(&Rational::frac(9, 10), 64).mag_down();
    if p.termination().is_some() || z.mag_up() <= radius {
        return f21_series(p, z, prec);
    }
    if z.is_negative() {
        return Err(Error::NoStrategy(format!("{p} at real z ≈ {} < -9/10", z.to_f64())));
    }
    let (q, euler) = integral_candidate(p)
        .ok_or_else(|| Error::NoStrategy(format!("{p} at z ≈ {}: no ordering with c > b > 0", z.to_f64())))?;
    let bits = prec.work_bits();
    let inner = prec.plus_bits(16);
    let mut v = f21_integral(&q, &z.with_prec(bits + 16), inner)?;
    if euler {
        let base = &BigReal::one(bits + 16) - z;
        v = &v * &pow_rational(&base, &p.excess())?;
    }
    Ok(v.with_prec(bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn hp(a: &str, b: &str, c: &str) -> HypParams {
        HypParams::from_strs(a, b, c).unwrap()
    }

    #[test]
    fn closed_form_at_quarter() {
        // 2F1(1/2, 2/3; 1/6; 1/4) = (4/3) 2^(1/3)
        let p = Precision::digits(40);
        let e = f21_eval_with(&hp("1/2", "2/3", "1/6"), &q("1/4"), p, &EvalOptions::default()).unwrap();
        assert!(matches!(e.strategy, Strategy::Series { .. }));
        let rhs = pow_rational(&BigReal::from_int(2, p.work_bits()), &q("1/3")).unwrap().mul_rational(&q("4/3"));
        assert!(e.value.overlaps(&rhs));
    }

    #[test]
    fn near_one_uses_integral() {
        let p = Precision::digits(25);
        let e = f21_eval_with(&hp("1/6", "1/2", "2/3"), &q("125/128"), p, &EvalOptions::default()).unwrap();
        assert!(matches!(e.strategy, Strategy::Integral { .. }));
        let rhs = pow_rational(&BigReal::from_int(2, p.work_bits()), &q("1/6")).unwrap().mul_rational(&q("4/3"));
        assert!(e.value.overlaps(&rhs));
    }

    #[test]
    fn cross_check_runs_at_low_precision() {
        let p = Precision::digits(15);
        let e = f21_eval_with(&hp("1/3", "1/5", "7/4"), &q("3/5"), p, &EvalOptions::default()).unwrap();
        assert!(e.cross_checked);
    }

    #[test]
    fn kummer_point_via_pfaff() {
        // 2F1(a, b; 1+a−b; −1) = Γ(1+a−b)Γ(1+a/2) / (Γ(1+a)Γ(1+a/2−b)), a = 1/2, b = 1/3
        let p = Precision::digits(40);
        let e = f21_eval_with(&hp("1/2", "1/3", "7/6"), &q("-1"), p, &EvalOptions::default()).unwrap();
        assert!(matches!(e.strategy, Strategy::Pfaff { .. }));
        let g = |x: &str| crate::mpreal::gamma(&q(x), p).unwrap();
        let rhs = (&g("7/6") * &g("5/4")).div(&(&g("3/2") * &g("11/12"))).unwrap();
        assert!(e.value.overlaps(&rhs));
    }

    #[test]
    fn real_argument_matches_rational() {
        let p = Precision::digits(30);
        for (z, par) in [("1/3", hp("1/4", "3/4", "5/4")), ("125/128", hp("1/6", "1/2", "2/3"))] {
            let zr = BigReal::from_rational(&q(z), p.work_bits());
            let a = f21_eval_real(&par, &zr, p).unwrap();
            let b = f21_eval(&par, &q(z), p).unwrap();
            assert!(a.overlaps(&b), "{z}");
        }
    }

    #[test]
    fn failures() {
        let p = Precision::digits(10);
        assert!(matches!(f21_eval(&hp("1/2", "1/3", "3"), &q("1"), p), Err(Error::NoStrategy(_))));
        assert!(matches!(f21_eval(&hp("1/2", "1/3", "3"), &q("2"), p), Err(Error::NoStrategy(_))));
        // no valid ordering: b, c−b never both positive
        assert!(matches!(f21_eval(&hp("3", "5/2", "-1/2"), &q("19/20"), p), Err(Error::NoStrategy(_))));
        // terminating is fine anywhere
        assert!(f21_eval(&hp("-2", "1/3", "3"), &q("5"), p).is_ok());
    }
}
