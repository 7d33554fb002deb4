use crate::error::{Error, Result};
use crate::mpreal::{pi, BigReal, Precision};

/// Complete elliptic integral K(k) = (π/2) / AGM(1, √(1−k²)).
///
/// The AGM lies between the two iterates at every step, so half their gap
/// is a rigorous truncation bound.
pub fn agm_k(k: &BigReal, prec: Precision) -> Result<BigReal> {
    let bits = prec.work_bits() + 16;
    let k = k.with_prec(bits);
    if k.is_negative() {
        return Err(Error::Domain("K(k) needs k ≥ 0".into()));
    }
    let one = BigReal::one(bits);
    let kp2 = &one - &(&k * &k);
    if !kp2.is_positive() {
        return Err(Error::Domain("K(k) needs k < 1".into()));
    }
    let mut a = one;
    let mut b = kp2.sqrt()?;
    for _ in 0..200 {
        // midpoint gap; the rounding errors of a and b are carried separately
        let gap = a.sub_exact_mid(&b).mid_mag_up();
        let scale = a.mag_down();
        if gap.log2_ceil().is_none_or(|g| g < scale.log2_floor().unwrap_or(0) - bits as i64 + 16) {
            let m = (&a + &b).mul_pow2(-1).add_err(gap.mul_pow2(-1));
            let v = pi(bits).mul_pow2(-1).div(&m)?;
            return Ok(v.with_prec(prec.work_bits()));
        }
        let an = (&a + &b).mul_pow2(-1);
        b = (&a * &b).sqrt()?;
        a = an;
    }
    Err(Error::Domain("AGM iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::hyper::{f21_series_rational, HypParams};
    use crate::mpreal::gamma;

    #[test]
    fn k_at_zero_is_half_pi() {
        let p = Precision::digits(50);
        let v = agm_k(&BigReal::zero(p.work_bits()), p).unwrap();
        assert!(v.overlaps(&pi(p.work_bits()).mul_pow2(-1)));
    }

    #[test]
    fn k_half_matches_series() {
        let p = Precision::digits(50);
        let k = BigReal::from_rational(&Rational::frac(1, 2), p.work_bits());
        let v = agm_k(&k, p).unwrap();
        assert!((v.to_f64() - 1.685750354812596).abs() < 1e-14);
        let par = HypParams::from_strs("1/2", "1/2", "1").unwrap();
        let s = f21_series_rational(&par, &Rational::frac(1, 4), p, 100_000).unwrap().value;
        assert!(s.overlaps(&(&v * &pi(p.work_bits()).mul_pow2(1).powi(-1).unwrap().mul_pow2(2))));
    }

    #[test]
    fn lemniscatic_value() {
        let p = Precision::digits(50);
        let b = p.work_bits();
        let k = BigReal::from_rational(&Rational::frac(1, 2), b).sqrt().unwrap();
        let v = agm_k(&k, p).unwrap();
        let g = gamma(&Rational::frac(1, 4), p).unwrap();
        let rhs = (&g * &g).div(&pi(b).sqrt().unwrap().mul_pow2(2)).unwrap();
        assert!(v.overlaps(&rhs));
    }

    #[test]
    fn domain() {
        let p = Precision::digits(10);
        assert!(agm_k(&BigReal::one(64), p).is_err());
        assert!(agm_k(&BigReal::from_int(-1, 64), p).is_err());
    }
}
