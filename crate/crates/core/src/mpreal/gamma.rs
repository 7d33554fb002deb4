//! Γ and Beta at rational or real arguments.
//!
//! The argument is first shifted upward by an exact integer `N` so the
//! Stirling series converges to the working precision; the remainder after
//! the last summed term is bounded by the first omitted term (valid for real
//! positive arguments), and `Γ(x) = Γ(x + N) / (x)_N` with `(x)_N` exact for
//! rational `x`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::elementary::{exp, ln, pi};
use super::{BigReal, Precision};
use crate::error::{Error, Result};
use crate::exact::Rational;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_2, B_4, ..., B_2n` (index k-1 holds B_2k), via tangent numbers.
pub fn bernoulli_even(n: usize) -> Vec<Rational> {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache poisoned");
    if cache.len() < n {
        let m = n.max(2 * cache.len()).max(32);
        let mut t = vec![BigInt::zero(); m + 1];
        t[1] = BigInt::one();
        for k in 2..=m {
            t[k] = &t[k - 1] * (k - 1);
        }
        for k in 2..=m {
            for j in k..=m {
                t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
            }
        }
        let mut out = Vec::with_capacity(m);
        for (k, tk) in t.iter().enumerate().skip(1) {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - 1u32);
            let mut b = Rational::new(tk * (2 * k), den).expect("nonzero");
            if k % 2 == 0 {
                b = -b;
            }
            out.push(b);
        }
        *cache = out;
    }
    cache[..n].to_vec()
}

/// Shift target for the Stirling series at `bits` of precision.
fn stirling_threshold(bits: u32) -> i64 {
    (bits as i64 * 2 / 5).max(24)
}

/// ln Γ(x) by the Stirling series; requires x >= 1 (and large for accuracy).
fn ln_gamma_stirling(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    let half = Rational::frac(1, 2);
    let lnx = ln(x)?;
    let two_pi = pi(prec).mul_pow2(1);
    let mut acc = &(&x.add_rational(&-&half) * &lnx) - x;
    acc = &acc + &ln(&two_pi)?.mul_pow2(-1);
    let inv_x = BigReal::one(prec).div(x)?;
    let inv_x2 = &inv_x * &inv_x;
    let mut power = inv_x; // x^{-(2k-1)}
    let target = super::bound::Bound::pow2(-(prec as i64) - 4);
    let mut batch = 64usize;
    let mut k = 1usize;
    loop {
        let bern = bernoulli_even(batch);
        while k <= batch {
            let b = &bern[k - 1];
            let coeff = b / &Rational::int((2 * k * (2 * k - 1)) as u64);
            let term = power.mul_rational(&coeff);
            let tb = term.mag_up();
            if tb < target && k > 1 {
                // remainder of an alternating-sign Stirling tail is below this term
                return Ok(acc.add_err(tb));
            }
            acc = &acc + &term;
            power = &power * &inv_x2;
            k += 1;
            if k > 4000 {
                return Err(Error::Domain("Stirling series failed to converge".into()));
            }
        }
        batch *= 2;
    }
}

fn check_pole(x: &Rational) -> Result<()> {
    if x.is_nonpositive_integer() {
        return Err(Error::Pole(format!("Gamma({x})")));
    }
    Ok(())
}

/// Exact rising factorial (x)_n.
pub(crate) fn rising(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc = acc * &t;
        t = t + Rational::one();
    }
    acc
}

/// Γ(x) at a rational argument to `bits` of working precision.
pub fn gamma_bits(x: &Rational, bits: u32) -> Result<BigReal> {
    check_pole(x)?;
    if let Some(n) = x.to_i64() {
        if (1..=400).contains(&n) {
            let f: BigInt = (1..n).map(BigInt::from).product();
            return Ok(BigReal::from_int(f, bits));
        }
    }
    let thr = stirling_threshold(bits);
    let shift = if x < &Rational::int(thr) { (Rational::int(thr) - x).floor().to_u64().unwrap_or(0) + 1 } else { 0 };
    let y = x + &Rational::int(shift);
    let inner = bits + 40;
    let lg = ln_gamma_stirling(&BigReal::from_rational(&y, inner))?;
    let g = exp(&lg)?;
    let g = if shift > 0 {
        let poch = rising(x, shift);
        g.mul_rational(&poch.recip()?)
    } else {
        g
    };
    Ok(g.with_prec(bits))
}

/// Γ(x) for rational x at the given precision.
pub fn gamma(x: &Rational, prec: Precision) -> Result<BigReal> {
    gamma_bits(x, prec.work_bits())
}

/// Γ(x) for a real interval argument. Fails if the interval (after the
/// upward shift) comes near a pole.
pub fn gamma_real(x: &BigReal) -> Result<BigReal> {
    let bits = x.prec();
    let thr = stirling_threshold(bits);
    let xf = x.to_f64();
    if xf <= 0.0 && (xf - xf.round()).abs() < 1e-300 {
        return Err(Error::Pole(format!("Gamma near {xf}")));
    }
    let shift = if xf < thr as f64 { (thr as f64 - xf).floor() as u64 + 1 } else { 0 };
    let inner = bits + 40;
    let xi = x.with_prec(inner);
    let y = xi.add_rational(&Rational::int(shift));
    let lg = ln_gamma_stirling(&y)?;
    let mut g = exp(&lg)?;
    if shift > 0 {
        let mut poch = BigReal::one(inner);
        let mut t = xi.clone();
        for _ in 0..shift {
            poch = &poch * &t;
            t = t.add_rational(&Rational::one());
        }
        g = g.div(&poch).map_err(|_| Error::Pole("Gamma argument interval contains a pole".into()))?;
    }
    Ok(g.with_prec(bits))
}

/// B(x, y) = Γ(x)Γ(y)/Γ(x+y).
pub fn beta(x: &Rational, y: &Rational, prec: Precision) -> Result<BigReal> {
    let bits = prec.work_bits() + 8;
    let s = x + y;
    let gx = gamma_bits(x, bits)?;
    let gy = gamma_bits(y, bits)?;
    let gs = gamma_bits(&s, bits)?;
    Ok((&gx * &gy).div(&gs)?.with_prec(prec.work_bits()))
}
