use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::bound::Bound;
use super::kernels::{atan_fixed, exp_fixed, ln2_fixed, ln_fixed, one, pi_fixed, sin_cos_fixed, to_fixed};
use super::BigReal;
use crate::error::{Error, Result};
use crate::exact::Rational;

fn bits_of(k: i64) -> u32 {
    64 - k.unsigned_abs().leading_zeros()
}

/// Build a BigReal from a fixed-point value and its error in ulps.
fn from_fixed(v: BigInt, wp: u32, err_ulps: u64, prec: u32) -> BigReal {
    BigReal::from_dyadic(v, -(wp as i64), prec).add_err(Bound::from_u64(err_ulps).mul_pow2(-(wp as i64)))
}

/// pi at `prec` bits.
pub fn pi(prec: u32) -> BigReal {
    let wp = prec + 8;
    from_fixed(pi_fixed(wp), wp, 2, prec)
}

/// ln 2 at `prec` bits.
pub fn ln2(prec: u32) -> BigReal {
    let wp = prec + 8;
    from_fixed(ln2_fixed(wp), wp, 2, prec)
}

/// e^x with propagated error.
pub fn exp(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e15 {
        return Err(Error::Domain(format!("exp argument out of range ({xf:e})")));
    }
    let mut out = if x.mid_is_zero() {
        BigReal::one(prec)
    } else {
        let k = (xf / std::f64::consts::LN_2).round() as i64;
        let wp = prec + 40 + bits_of(k) + ((prec as f64).sqrt() as u32);
        let (xm, dropped) = to_fixed(x.mantissa(), x.exponent(), wp);
        let r = xm - ln2_fixed(wp) * k;
        // |k| * 2 ulps from ln 2, one from truncating x
        let r_err = 2 * k.unsigned_abs() + dropped as u64 + 1;
        let (e, rel) = exp_fixed(&r, wp);
        // relative error from r_err absolute: e^{r_err ulp} - 1 <= 2 r_err ulps
        let rel = rel + 2 * r_err + 1;
        let mag = Bound::from_big_up(&e, k - wp as i64);
        BigReal::from_dyadic(e, k - wp as i64, prec).add_err(mag.mul(Bound::from_u64(rel)).mul_pow2(-(wp as i64)))
    };
    if !x.err().is_zero() {
        let ex = x.err();
        // |e^{x+d} - e^x| <= e^x (e^{|d|} - 1)
        let factor = if ex <= Bound::pow2(-1) {
            ex.mul_u64(2)
        } else {
            let f = ex.to_f64();
            if f > 700.0 {
                return Err(Error::Domain("exp of an interval wider than 700".into()));
            }
            Bound::from_f64_up(f.exp_m1() * 1.01 + 1e-300)
        };
        let mag = out.mag_up();
        out = out.add_err(mag.mul(factor));
    }
    Ok(out)
}

/// Natural logarithm; the interval must lie strictly above zero.
pub fn ln(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    if !x.is_positive() {
        return Err(Error::Domain("log of a non-positive number".into()));
    }
    let man = x.mantissa();
    let l = man.bits() as i64;
    // x = m * 2^e2 with m in [1/2, 1)
    let mut e2 = x.exponent() + l;
    let wp0 = prec + 40;
    let wp = wp0 + bits_of(e2) + 2;
    let (mut m, dropped) = to_fixed(man, -l, wp);
    // move m into [1/sqrt2, sqrt2)
    let lim = BigInt::from(46341u64) * one(wp) / 65536u64; // ~0.7071
    if m < lim {
        m <<= 1usize;
        e2 -= 1;
    }
    let out = if e2 == 0 && m == one(wp) {
        BigReal::zero(prec)
    } else {
        let (lm, err) = ln_fixed(&m, wp);
        let v = lm + ln2_fixed(wp) * e2;
        let err = err + 2 * e2.unsigned_abs() + dropped as u64 + 2;
        from_fixed(v, wp, err, prec)
    };
    if x.err().is_zero() {
        return Ok(out);
    }
    // |ln(x+d) - ln x| <= |d| / (x - |d|)
    Ok(out.add_err(x.err().div_up(x.mag_down())))
}

/// x^q for rational q. Integer exponents allow any nonzero base; fractional
/// exponents need a strictly positive base.
pub fn pow_rational(x: &BigReal, q: &Rational) -> Result<BigReal> {
    if q.is_zero() {
        return Ok(BigReal::one(x.prec()));
    }
    if let Some(n) = q.to_i64() {
        return x.powi(n);
    }
    if !x.is_positive() {
        return Err(Error::Domain("fractional power of a non-positive base".into()));
    }
    if q.denom() == &BigInt::from(2) && q.numer().abs() == BigInt::one() {
        let r = x.sqrt()?;
        return if q.is_negative() { BigReal::one(x.prec()).div(&r) } else { Ok(r) };
    }
    let prec = x.prec();
    // absolute error in q*ln(x) turns into relative error of the result
    let lx_mag = x.log2_floor().unwrap_or(0).unsigned_abs() + 1;
    let extra = (q.numer().bits() as u32) + bits_of(lx_mag as i64) + 8;
    let lnx = ln(&x.with_prec(prec + extra))?;
    let arg = lnx.mul_rational(q);
    let r = exp(&arg)?;
    Ok(r.with_prec(prec))
}

/// Reduce a rational multiple of pi: returns (sin(pi x), cos(pi x)).
pub fn sin_cos_pi_rational(x: &Rational, prec: u32) -> (BigReal, BigReal) {
    // r = x mod 2 in [0, 2)
    let two = Rational::int(2);
    let r = x - &(&two * Rational::int((x / &two).floor()));
    // sin(pi r), cos(pi r) from r in [0, 1/2] by symmetry
    let (r, sin_sign, cos_sign) = if r >= Rational::one() { (r - Rational::one(), -1i8, -1i8) } else { (r, 1, 1) };
    let half = Rational::frac(1, 2);
    let (r, cos_sign) = if r > half { (Rational::one() - r, -cos_sign) } else { (r, cos_sign) };
    // r in [0, 1/2]
    let quarter = Rational::frac(1, 4);
    let (s, c) = if r.is_zero() {
        (BigReal::zero(prec), BigReal::one(prec))
    } else if r == half {
        (BigReal::one(prec), BigReal::zero(prec))
    } else {
        let (rr, swap) = if r > quarter { (&half - &r, true) } else { (r, false) };
        let wp = prec + 32;
        let theta = pi_fixed(wp) * rr.numer() / rr.denom();
        let (s, c, err) = sin_cos_fixed(&theta, wp);
        let s = from_fixed(s, wp, err + 3, prec);
        let c = from_fixed(c, wp, err + 3, prec);
        if swap {
            (c, s)
        } else {
            (s, c)
        }
    };
    let s = if sin_sign < 0 { -s } else { s };
    let c = if cos_sign < 0 { -c } else { c };
    (s, c)
}

/// sin(pi x) for rational x, with exact argument reduction.
pub fn sin_pi(x: &Rational, prec: u32) -> BigReal {
    sin_cos_pi_rational(x, prec).0
}

/// cos(pi x) for rational x, with exact argument reduction.
pub fn cos_pi(x: &Rational, prec: u32) -> BigReal {
    sin_cos_pi_rational(x, prec).1
}

/// sin(pi x) for a real argument.
pub fn sin_pi_real(x: &BigReal) -> BigReal {
    let s = sin_pi(&x.mid_rational(), x.prec());
    let pi_up = Bound::from_u64(4);
    s.add_err(x.err().mul(pi_up))
}

/// cos(pi x) for a real argument.
pub fn cos_pi_real(x: &BigReal) -> BigReal {
    let c = cos_pi(&x.mid_rational(), x.prec());
    c.add_err(x.err().mul(Bound::from_u64(4)))
}

/// Arctangent.
pub fn atan(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    let wp = prec + 48;
    let out = if x.mid_is_zero() {
        BigReal::zero(prec)
    } else {
        let (xf, dropped) = to_fixed(x.mantissa(), x.exponent(), wp);
        let unit = one(wp);
        if xf.abs() <= unit {
            let (a, err) = atan_fixed(&xf, wp);
            from_fixed(a, wp, err + dropped as u64 + 1, prec)
        } else {
            // atan x = sign(x) pi/2 - atan(1/x)
            let inv = (&unit << wp as usize) / &xf;
            let (a, err) = atan_fixed(&inv, wp);
            let half_pi = pi_fixed(wp) >> 1usize;
            let v = if xf.is_negative() { -half_pi - a } else { half_pi - a };
            from_fixed(v, wp, err + 4, prec)
        }
    };
    Ok(out.add_err(x.err()))
}

/// Arcsine on [-1, 1].
pub fn asin(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    let one_r = BigReal::one(prec);
    let ax = x.abs();
    if ax.mid().cmp_mid(&one_r).is_gt() && ax.mag_down() > Bound::from_u64(1) {
        return Err(Error::Domain("asin argument outside [-1, 1]".into()));
    }
    if x.is_exact() && ax.cmp_mid(&one_r).is_eq() {
        let hp = pi(prec).mul_pow2(-1);
        return Ok(if x.is_negative() { -hp } else { hp });
    }
    let den = (&one_r - &(x * x)).sqrt()?;
    if den.mag_down().is_zero() {
        return Err(Error::Domain("asin argument too close to ±1 for the working precision".into()));
    }
    atan(&x.div(&den)?)
}

/// Square root (convenience mirror of [`BigReal::sqrt`]).
pub fn sqrt(x: &BigReal) -> Result<BigReal> {
    x.sqrt()
}
