//! Fixed-point kernels. A fixed-point value `X` at `wp` bits stands for
//! `X * 2^-wp`. Each kernel returns its result together with a bound, in
//! units of `2^-wp`, on the absolute error it introduced.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[inline]
pub(crate) fn one(wp: u32) -> BigInt {
    BigInt::one() << wp as usize
}

#[inline]
fn fx_mul(a: &BigInt, b: &BigInt, wp: u32) -> BigInt {
    (a * b) >> wp as usize
}

/// atan(1/k) for integer k >= 2. Error <= 2 * terms ulps.
fn atan_inv(k: u64, wp: u32) -> (BigInt, u64) {
    let k2 = BigInt::from(k * k);
    let mut power = one(wp) / k;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    loop {
        let term = &power / (2 * n + 1);
        if term.is_zero() {
            break;
        }
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        n += 1;
    }
    (sum, 2 * n + 2)
}

/// atanh(1/k) for integer k >= 2. Error <= 2 * terms ulps.
fn atanh_inv(k: u64, wp: u32) -> (BigInt, u64) {
    let k2 = BigInt::from(k * k);
    let mut power = one(wp) / k;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    loop {
        let term = &power / (2 * n + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        power /= &k2;
        n += 1;
    }
    (sum, 2 * n + 2)
}

struct ConstCache {
    slot: Mutex<Option<(u32, BigInt)>>,
    compute: fn(u32) -> BigInt,
}

impl ConstCache {
    /// Value at `wp` bits with error <= 2 ulps.
    fn get(&self, wp: u32) -> BigInt {
        let mut slot = self.slot.lock().expect("constant cache poisoned");
        if let Some((bits, v)) = slot.as_ref() {
            if *bits >= wp {
                return v >> (bits - wp) as usize;
            }
        }
        let bits = wp.max(slot.as_ref().map_or(0, |(b, _)| b * 2)).max(256);
        let v = (self.compute)(bits);
        let out = &v >> (bits - wp) as usize;
        *slot = Some((bits, v));
        out
    }
}

fn compute_pi(bits: u32) -> BigInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239), with 24 guard bits
    let g = bits + 24;
    let (a, _) = atan_inv(5, g);
    let (b, _) = atan_inv(239, g);
    (a * 16 - b * 4) >> 24usize
}

fn compute_ln2(bits: u32) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let g = bits + 24;
    let (a, _) = atanh_inv(3, g);
    (a * 2) >> 24usize
}

static PI: ConstCache = ConstCache { slot: Mutex::new(None), compute: compute_pi };
static LN2: ConstCache = ConstCache { slot: Mutex::new(None), compute: compute_ln2 };

/// pi at `wp` bits, error <= 2 ulps.
pub(crate) fn pi_fixed(wp: u32) -> BigInt {
    PI.get(wp)
}

/// ln 2 at `wp` bits, error <= 2 ulps.
pub(crate) fn ln2_fixed(wp: u32) -> BigInt {
    LN2.get(wp)
}

/// exp(r) for |r| <= 1/2 (plus a few ulps). Returns (value, relative error in ulps).
pub(crate) fn exp_fixed(r: &BigInt, wp: u32) -> (BigInt, u64) {
    let s: u32 = ((wp as f64).sqrt() / 2.0) as u32;
    let y = r >> s as usize;
    let unit = one(wp);
    let mut sum = unit.clone();
    let mut term = unit;
    let mut n = 1u64;
    loop {
        term = fx_mul(&term, &y, wp) / n;
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    // Taylor part: <= n + 2 ulps absolute on a value >= 1/2
    let mut rel = 2 * (n + 3);
    for _ in 0..s {
        sum = fx_mul(&sum, &sum, wp);
        rel = 2 * rel + 2;
    }
    (sum, rel)
}

/// ln(m) for fixed-point `m` in [1/sqrt2, sqrt2]. Returns (value, absolute error in ulps).
pub(crate) fn ln_fixed(m: &BigInt, wp: u32) -> (BigInt, u64) {
    let s: u32 = 5;
    let unit = one(wp);
    let mut y = m.clone();
    for _ in 0..s {
        y = (&y << wp as usize).sqrt();
    }
    let u = ((&y - &unit) << wp as usize) / (&y + &unit);
    let u2 = fx_mul(&u, &u, wp);
    let mut power = u;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    loop {
        let term = &power / (2 * n + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        power = fx_mul(&power, &u2, wp);
        n += 1;
    }
    let abs_ulps = (n + 8) << (s + 1);
    (sum << (s + 1) as usize, abs_ulps)
}

/// (sin θ, cos θ) for |θ| <= 0.8. Error <= terms + 3 ulps each.
pub(crate) fn sin_cos_fixed(theta: &BigInt, wp: u32) -> (BigInt, BigInt, u64) {
    let t2 = fx_mul(theta, theta, wp);
    // sin
    let mut term = theta.clone();
    let mut sin = theta.clone();
    let mut k = 1u64;
    loop {
        term = -fx_mul(&term, &t2, wp) / ((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sin += &term;
        k += 1;
    }
    let mut n = k;
    // cos
    let mut term = one(wp);
    let mut cos = term.clone();
    let mut k = 1u64;
    loop {
        term = -fx_mul(&term, &t2, wp) / ((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        cos += &term;
        k += 1;
    }
    n = n.max(k);
    (sin, cos, n + 3)
}

/// atan(x) for |x| <= 1 (fixed point). Returns (value, absolute error in ulps).
pub(crate) fn atan_fixed(x: &BigInt, wp: u32) -> (BigInt, u64) {
    let k: u32 = 8;
    let unit = one(wp);
    let mut y = x.clone();
    for _ in 0..k {
        // y <- y / (1 + sqrt(1 + y^2))
        let y2 = fx_mul(&y, &y, wp);
        let root = ((&unit + y2) << wp as usize).sqrt();
        y = (&y << wp as usize) / (&unit + root);
    }
    let y2 = fx_mul(&y, &y, wp);
    let mut power = y;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    loop {
        let term = &power / (2 * n + 1);
        if term.is_zero() {
            break;
        }
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = fx_mul(&power, &y2, wp);
        n += 1;
    }
    let abs_ulps = (n + 4 * k as u64 + 4) << k;
    (sum << k as usize, abs_ulps)
}

/// Convert a dyadic `man * 2^exp` to fixed point at `wp` bits (truncating).
/// The second component is true when bits were dropped.
pub(crate) fn to_fixed(man: &BigInt, exp: i64, wp: u32) -> (BigInt, bool) {
    let sh = exp + wp as i64;
    if sh >= 0 {
        (man << sh as usize, false)
    } else {
        let s = (-sh) as u64;
        let dropped = man.magnitude().trailing_zeros().is_some_and(|tz| tz < s);
        let v = if man.is_negative() { -(man.abs() >> s as usize) } else { man >> s as usize };
        (v, dropped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f(x: &BigInt, wp: u32) -> f64 {
        use num_traits::ToPrimitive;
        (x >> (wp as usize - 60)).to_f64().unwrap() / 2f64.powi(60)
    }

    #[test]
    fn constants_match_f64() {
        assert!((to_f(&pi_fixed(200), 200) - std::f64::consts::PI).abs() < 1e-15);
        assert!((to_f(&ln2_fixed(300), 300) - std::f64::consts::LN_2).abs() < 1e-15);
        // cache extension then truncation stays consistent
        let a = pi_fixed(1000);
        let b = pi_fixed(400);
        assert!(((a >> 600usize) - b).abs() <= BigInt::from(4));
    }

    #[test]
    fn kernels_match_f64() {
        let wp = 200;
        let half = one(wp) >> 1usize;
        let (e, _) = exp_fixed(&half, wp);
        assert!((to_f(&e, wp) - 0.5f64.exp()).abs() < 1e-15);
        let (l, _) = ln_fixed(&(one(wp) * 5 / 4), wp);
        assert!((to_f(&l, wp) - 1.25f64.ln()).abs() < 1e-15);
        let (s, c, _) = sin_cos_fixed(&half, wp);
        assert!((to_f(&s, wp) - 0.5f64.sin()).abs() < 1e-15);
        assert!((to_f(&c, wp) - 0.5f64.cos()).abs() < 1e-15);
        let (a, _) = atan_fixed(&(one(wp) * 3 / 4), wp);
        assert!((to_f(&a, wp) - 0.75f64.atan()).abs() < 1e-15);
    }
}
