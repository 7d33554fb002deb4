use super::HypParams;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::mpreal::{gamma_bits, pow_rational, tanh_sinh, BigReal, Precision, QuadOptions};

/// x^e, skipping the work for e = 0.
fn power(x: &BigReal, e: &Rational) -> Result<BigReal> {
    if e.is_zero() {
        Ok(BigReal::one(x.prec()))
    } else {
        pow_rational(x, e)
    }
}

/// ₂F₁ through Euler's integral
///
/// Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^(b−1) (1−t)^(c−b−1) (1−zt)^(−a) dt,
///
/// valid for c > b > 0 and z < 1. At z = 1 the two factors at t = 1 merge
/// into a Beta integral, which converges when c − a − b > 0.
pub fn f21_integral(p: &HypParams, z: &BigReal, prec: Precision) -> Result<BigReal> {
    if !(p.b.is_positive() && p.c > p.b) {
        return Err(Error::Domain(format!("Euler integral needs c > b > 0, got {p}")));
    }
    let bits = prec.work_bits();
    let one = BigReal::one(bits);
    let at_one = z.is_exact() && z.mid_rational() == Rational::one();
    if at_one {
        if !p.excess().is_positive() {
            return Err(Error::Domain(format!("2F1 at z = 1 diverges for {p}")));
        }
    } else if !(&one - z).is_positive() {
        return Err(Error::Domain("Euler integral needs z < 1".into()));
    }
    if z.is_exact() && z.mid_is_zero() {
        return Ok(one);
    }
    let e_left = &p.b - &Rational::one();
    let e_right = &(&p.c - &p.b) - &Rational::one();
    let neg_a = -&p.a;
    let one_minus_z = (&one - z).with_prec(bits + 16);
    let zq = z.with_prec(bits + 16);
    let integrand = |pt: &crate::mpreal::QuadPoint| -> Result<BigReal> {
        if at_one {
            let e = &e_right + &neg_a;
            return Ok(&power(pt.from_a, &e_left)? * &power(pt.to_b, &e)?);
        }
        // 1 − z t = (1 − z) + z (1 − t), free of cancellation near t = 1
        let w = &one_minus_z + &(&zq * pt.to_b);
        let v = &power(pt.from_a, &e_left)? * &power(pt.to_b, &e_right)?;
        Ok(&v * &power(&w, &neg_a)?)
    };
    let q = tanh_sinh(integrand, &Rational::zero(), &Rational::one(), prec, &QuadOptions::default())?;
    let gb = bits + 16;
    let pref = gamma_bits(&p.c, gb)?.div(&(&gamma_bits(&p.b, gb)? * &gamma_bits(&(&p.c - &p.b), gb)?))?;
    Ok((&pref * &q.value).with_prec(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::series::f21_series_rational;
    use crate::mpreal::sqrt;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn hp(a: &str, b: &str, c: &str) -> HypParams {
        HypParams::from_strs(a, b, c).unwrap()
    }

    #[test]
    fn zucker_joyce_first_value() {
        let p = Precision::digits(30);
        let z = BigReal::from_rational(&q("2400/2401"), p.work_bits());
        let v = f21_integral(&hp("1/8", "3/8", "1/2"), &z, p).unwrap();
        let expect = sqrt(&BigReal::from_int(7, p.work_bits())).unwrap().mul_rational(&q("2/3"));
        assert!(v.overlaps(&expect), "{v:?}");
        assert!(p.is_met_by(&v));
    }

    #[test]
    fn agrees_with_series_inside_disc() {
        let p = Precision::digits(30);
        let par = hp("1/3", "1/4", "5/3");
        let s = f21_series_rational(&par, &q("-1/2"), p, 100_000).unwrap().value;
        let z = BigReal::from_rational(&q("-1/2"), p.work_bits());
        let i = f21_integral(&par, &z, p).unwrap();
        assert!(s.overlaps(&i));
    }

    #[test]
    fn gauss_at_one() {
        // 2F1(1/3, 1/2; 2; 1) = Γ(2)Γ(7/6) / (Γ(5/3)Γ(3/2))
        let p = Precision::digits(30);
        let b = p.work_bits();
        let v = f21_integral(&hp("1/3", "1/2", "2"), &BigReal::one(b), p).unwrap();
        let g = |x: &str| gamma_bits(&q(x), b).unwrap();
        let rhs = (&g("2") * &g("7/6")).div(&(&g("5/3") * &g("3/2"))).unwrap();
        assert!(v.overlaps(&rhs));
    }

    #[test]
    fn preconditions() {
        let p = Precision::digits(10);
        let z = BigReal::from_rational(&q("1/2"), p.work_bits());
        assert!(f21_integral(&hp("1/3", "2", "3/2"), &z, p).is_err());
        assert!(f21_integral(&hp("1/3", "-1/2", "3/2"), &z, p).is_err());
        let two = BigReal::from_int(2, p.work_bits());
        assert!(f21_integral(&hp("1/3", "1/2", "3/2"), &two, p).is_err());
        assert!(f21_integral(&hp("1", "1/2", "3/2"), &BigReal::one(64), p).is_err());
    }
}
