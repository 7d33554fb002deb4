use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bound::{cmp_dyadic, Bound};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// An arbitrary-precision real: a dyadic midpoint `man * 2^exp` together with
/// a bound `err` on the absolute distance to the true value.
///
/// Every operation rounds its result to `prec` bits (the larger precision of
/// the operands) and adds the rounding error and the propagated input errors
/// to `err`, so the true value always lies in `[mid - err, mid + err]`.
#[derive(Clone)]
pub struct BigReal {
    man: BigInt,
    exp: i64,
    prec: u32,
    err: Bound,
}

impl BigReal {
    /// Exact zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        BigReal { man: BigInt::zero(), exp: 0, prec, err: Bound::ZERO }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Self::from_dyadic(n.into(), 0, prec)
    }

    /// `man * 2^exp` rounded to `prec` bits.
    pub fn from_dyadic(man: BigInt, exp: i64, prec: u32) -> Self {
        BigReal { man, exp, prec, err: Bound::ZERO }.rounded()
    }

    /// Nearest representable value to `q` at `prec` bits, with its error.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (n, d) = (q.numer(), q.denom());
        if d.is_one() {
            return Self::from_dyadic(n.clone(), 0, prec);
        }
        // power-of-two denominators are exact
        if d.magnitude().count_ones() == 1 {
            let k = d.trailing_zeros().unwrap() as i64;
            return Self::from_dyadic(n.clone(), -k, prec);
        }
        let shift = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let shift = shift.max(0);
        let (quot, rem) = (n << shift as usize).div_rem(d);
        let inexact = !rem.is_zero();
        let mut x = BigReal { man: quot, exp: -shift, prec, err: Bound::ZERO };
        if inexact {
            x.err = Bound::pow2(-shift);
        }
        x.rounded()
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if v < 0.0 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Self::from_dyadic(BigInt::from(m) * sign, ex, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn err(&self) -> Bound {
        self.err
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// True if the midpoint is zero.
    pub fn mid_is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    /// Same number re-rounded to another precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigReal { prec, ..self.clone() }.rounded()
    }

    /// Replace the error bound by a larger one (used by algorithms that know
    /// their own truncation error).
    pub fn add_err(mut self, e: Bound) -> Self {
        self.err = self.err.add(e);
        self
    }

    /// The midpoint as an exact rational.
    pub fn mid_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::int(&self.man << self.exp as usize)
        } else {
            Rational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize).expect("power of two")
        }
    }

    /// Midpoint with the error bound dropped.
    pub fn mid(&self) -> Self {
        BigReal { err: Bound::ZERO, ..self.clone() }
    }

    /// Upper bound on |mid|.
    pub fn mid_mag_up(&self) -> Bound {
        Bound::from_big_up(&self.man, self.exp)
    }

    /// Upper bound on |x| for every x in the interval.
    pub fn mag_up(&self) -> Bound {
        self.mid_mag_up().add(self.err)
    }

    /// Lower bound on |x| over the interval (zero if it straddles zero).
    pub fn mag_down(&self) -> Bound {
        let (em, ee) = self.err.to_big();
        let e = self.exp.min(ee);
        let a = self.man.abs() << (self.exp - e) as usize;
        let b = em << (ee - e) as usize;
        if a <= b {
            Bound::ZERO
        } else {
            Bound::from_big_down(&(a - b), e)
        }
    }

    /// True when zero lies outside the interval.
    pub fn is_nonzero(&self) -> bool {
        !self.mag_down().is_zero()
    }

    /// True when every point of the interval is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.man.sign() == Sign::Plus && self.is_nonzero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.sign() == Sign::Minus && self.is_nonzero()
    }

    /// Rough f64 view of the midpoint.
    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = bits - 60;
        let top = if shift > 0 { &self.man >> shift as usize } else { self.man.clone() };
        let e = self.exp + shift.max(0);
        let t = top.to_f64().unwrap();
        if e > 1100 {
            return t.signum() * f64::INFINITY;
        }
        if e < -1200 {
            return 0.0;
        }
        let half = (e / 2) as i32;
        t * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    /// floor(log2 |mid|), or `None` for a zero midpoint.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.man.is_zero()).then(|| self.man.bits() as i64 - 1 + self.exp)
    }

    fn rounded(mut self) -> Self {
        let bits = self.man.bits();
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            // arithmetic shift floors; the discarded part is below one new ulp
            let exact = self.man.magnitude().trailing_zeros().unwrap_or(0) >= shift;
            self.man >>= shift as usize;
            self.exp += shift as i64;
            if !exact {
                self.err = self.err.add(Bound::pow2(self.exp));
            }
        }
        self
    }

    /// Interval hull containment check for a rational: is `q` in [mid-err, mid+err]?
    pub fn contains_rational(&self, q: &Rational) -> bool {
        let diff = &self.mid_rational() - q;
        let (em, ee) = self.err.to_big();
        let err = if ee >= 0 {
            Rational::int(em << ee as usize)
        } else {
            Rational::new(em, BigInt::one() << (-ee) as usize).unwrap()
        };
        diff.abs() <= err
    }

    /// Does the interval of `self` overlap the interval of `other`?
    pub fn overlaps(&self, other: &BigReal) -> bool {
        let d = self.sub_exact_mid(other);
        let total = self.err.add(other.err);
        total.cmp_big(&d.man, d.exp) != Ordering::Less
    }

    /// Exact midpoint difference (no rounding); used by comparisons.
    pub(crate) fn sub_exact_mid(&self, other: &BigReal) -> BigReal {
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        BigReal { man: a - b, exp: e, prec: u32::MAX, err: Bound::ZERO }
    }

    /// Compare midpoints exactly.
    pub fn cmp_mid(&self, other: &BigReal) -> Ordering {
        cmp_dyadic(&self.man, self.exp, &other.man, other.exp)
    }

    pub fn abs(&self) -> Self {
        BigReal { man: self.man.abs(), ..self.clone() }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigReal { man: self.man.clone(), exp: self.exp + k, prec: self.prec, err: self.err.mul_pow2(k) }
    }

    fn add_impl(&self, rhs: &BigReal, negate_rhs: bool) -> BigReal {
        let prec = self.prec.max(rhs.prec);
        let err = self.err.add(rhs.err);
        if rhs.man.is_zero() {
            return BigReal { prec, err, ..self.clone() }.rounded();
        }
        if self.man.is_zero() {
            let man = if negate_rhs { -&rhs.man } else { rhs.man.clone() };
            return BigReal { man, exp: rhs.exp, prec, err }.rounded();
        }
        let top_a = self.man.bits() as i64 + self.exp;
        let top_b = rhs.man.bits() as i64 + rhs.exp;
        // absorb an operand lying far below the result's last place into the error
        let slack = prec as i64 + 4;
        if top_b < top_a - slack {
            return BigReal { prec, err: err.add(Bound::pow2(top_b)), ..self.clone() }.rounded();
        }
        if top_a < top_b - slack {
            let man = if negate_rhs { -&rhs.man } else { rhs.man.clone() };
            return BigReal { man, exp: rhs.exp, prec, err: err.add(Bound::pow2(top_a)) }.rounded();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &rhs.man << (rhs.exp - e) as usize;
        let man = if negate_rhs { a - b } else { a + b };
        BigReal { man, exp: e, prec, err }.rounded()
    }

    fn mul_impl(&self, rhs: &BigReal) -> BigReal {
        let prec = self.prec.max(rhs.prec);
        let err = self.mid_mag_up().mul(rhs.err).add(rhs.mid_mag_up().mul(self.err)).add(self.err.mul(rhs.err));
        BigReal { man: &self.man * &rhs.man, exp: self.exp + rhs.exp, prec, err }.rounded()
    }

    /// Quotient; fails if the divisor interval contains zero.
    pub fn div(&self, rhs: &BigReal) -> Result<BigReal> {
        let prec = self.prec.max(rhs.prec);
        let den_low = rhs.mag_down();
        if den_low.is_zero() {
            return Err(Error::PossiblyZeroDivisor);
        }
        let shift = (prec as i64 + 2 + rhs.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << shift as usize;
        let q = &num / &rhs.man;
        let exp = self.exp - shift - rhs.exp;
        // truncation below one unit of the quotient scale
        let mut err = if (&q * &rhs.man) == num { Bound::ZERO } else { Bound::pow2(exp) };
        if !self.err.is_zero() || !rhs.err.is_zero() {
            // |a/b - â/b̂| <= (ea + |â/b̂| eb) / (|b̂| - eb)
            let ratio = Bound::from_big_up(&q, exp).add(Bound::pow2(exp));
            let num_err = self.err.add(ratio.mul(rhs.err));
            err = err.add(num_err.div_up(den_low));
        }
        Ok(BigReal { man: q, exp, prec, err }.rounded())
    }

    /// Multiply by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> BigReal {
        let prec = self.prec;
        let num = BigReal { man: q.numer().clone(), exp: 0, prec: u32::MAX, err: Bound::ZERO };
        let t = BigReal { prec: u32::MAX, ..self.clone() }.mul_impl(&num);
        let t = BigReal { prec, ..t }.rounded();
        if q.denom().is_one() {
            return t;
        }
        let den = BigReal { man: q.denom().clone(), exp: 0, prec, err: Bound::ZERO };
        t.div(&den).expect("positive denominator")
    }

    pub fn add_rational(&self, q: &Rational) -> BigReal {
        self + &BigReal::from_rational(q, self.prec + 8)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Result<BigReal> {
        if n == 0 {
            return Ok(BigReal::one(self.prec));
        }
        let mut base = self.clone();
        let mut k = n.unsigned_abs();
        let mut acc = BigReal::one(self.prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            BigReal::one(self.prec).div(&acc)
        } else {
            Ok(acc)
        }
    }

    /// Square root; the interval may touch zero but not lie below it.
    pub fn sqrt(&self) -> Result<BigReal> {
        let prec = self.prec;
        if self.man.sign() == Sign::Minus {
            if self.is_nonzero() {
                return Err(Error::Domain("sqrt of a negative number".into()));
            }
            // interval straddles zero: the root lies in [0, sqrt(err)]
            let r = self.err.add(self.mid_mag_up()).sqrt_up();
            return Ok(BigReal { man: BigInt::zero(), exp: 0, prec, err: r });
        }
        if self.man.is_zero() {
            return Ok(BigReal { err: self.err.sqrt_up(), ..self.clone() });
        }
        // choose an even exponent and ~2*prec+4 bits of mantissa
        let want = 2 * prec as i64 + 4;
        let mut shift = (want - self.man.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.man << shift as usize;
        let e = self.exp - shift;
        let r = m.sqrt();
        let rexp = e / 2;
        let mut err = if &r * &r == m { Bound::ZERO } else { Bound::pow2(rexp) };
        if !self.err.is_zero() {
            // |sqrt(x) - sqrt(x̂)| <= min(ex / sqrt(x̂), sqrt(ex))
            let root_low = Bound::from_big_down(&r, rexp);
            let lin = if root_low.is_zero() { self.err.sqrt_up() } else { self.err.div_up(root_low) };
            err = err.add(lin.min(self.err.sqrt_up()));
        }
        Ok(BigReal { man: r, exp: rexp, prec, err }.rounded())
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        super::decimal::format_sig(self, digits)
    }

    /// `"<midpoint> ± <bound>"`. The bound also covers the rounding of the
    /// printed midpoint, so the text denotes an interval containing `self`.
    pub fn to_decimal_with_bound(&self, digits: usize) -> String {
        let shown = self.to_decimal(digits);
        let q = super::decimal::parse_decimal_rational(&shown).expect("formatter output parses");
        let gap = BigReal::from_rational(&(q - self.mid_rational()).abs(), 64).mag_up();
        format!("{shown} ± {}", self.err.add(gap))
    }

    /// Number of correct decimal digits implied by the bound, relative to
    /// max(1, |x|). Saturates at 0 and returns `None` for exact values.
    pub fn correct_digits(&self) -> Option<u32> {
        if self.err.is_zero() {
            return None;
        }
        let scale = self.mid_mag_up().max(Bound::from_u64(1));
        let l2 = self.err.log2_ceil().unwrap() - scale.log2_floor().unwrap();
        let d = -(l2 as f64) * std::f64::consts::LOG10_2;
        Some(d.floor().max(0.0) as u32)
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        self.add_impl(rhs, false)
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self.add_impl(rhs, true)
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        self.mul_impl(rhs)
    }
}

impl Add for BigReal {
    type Output = BigReal;
    fn add(self, rhs: BigReal) -> BigReal {
        self.add_impl(&rhs, false)
    }
}

impl Sub for BigReal {
    type Output = BigReal;
    fn sub(self, rhs: BigReal) -> BigReal {
        self.add_impl(&rhs, true)
    }
}

impl Mul for BigReal {
    type Output = BigReal;
    fn mul(self, rhs: BigReal) -> BigReal {
        self.mul_impl(&rhs)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { man: -self.man, ..self }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { man: -&self.man, ..self.clone() }
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize).max(1);
        write!(f, "{}", self.to_decimal_with_bound(digits))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({} ± {}, {} bits)", self.to_decimal(25), self.err, self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_conversion_brackets_value() {
        for s in ["1/3", "-22/7", "2400/2401", "1/1024", "12345678901234567890/7"] {
            let x = BigReal::from_rational(&q(s), 200);
            assert!(x.contains_rational(&q(s)), "{s}");
        }
        assert!(BigReal::from_rational(&q("3/8"), 64).is_exact());
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let (a, b) = (q("1/3"), q("-5/7"));
        let x = BigReal::from_rational(&a, 100);
        let y = BigReal::from_rational(&b, 100);
        assert!((&x + &y).contains_rational(&(&a + &b)));
        assert!((&x - &y).contains_rational(&(&a - &b)));
        assert!((&x * &y).contains_rational(&(&a * &b)));
        assert!(x.div(&y).unwrap().contains_rational(&(&a / &b)));
        assert!(x.mul_rational(&b).contains_rational(&(&a * &b)));
    }

    #[test]
    fn division_by_possible_zero() {
        let tiny = BigReal::zero(64).add_err(Bound::pow2(-10));
        assert_eq!(BigReal::one(64).div(&tiny).unwrap_err(), Error::PossiblyZeroDivisor);
    }

    #[test]
    fn sqrt_of_seven_squares_back() {
        let r = BigReal::from_int(7, 300).sqrt().unwrap();
        let sq = &r * &r;
        assert!(sq.contains_rational(&q("7")));
        assert!(r.err().log2_ceil().unwrap() < -290);
        assert!(BigReal::from_int(-1, 64).sqrt().is_err());
    }

    #[test]
    fn far_apart_addition_is_absorbed() {
        let big = BigReal::one(100);
        let tiny = BigReal::from_dyadic(BigInt::from(1), -100_000, 100);
        let s = &big + &tiny;
        assert!(s.err() >= Bound::pow2(-100_000));
        assert!(s.err() < Bound::pow2(-99));
    }

    #[test]
    fn powi_matches_rational_power() {
        let x = BigReal::from_rational(&q("3/7"), 128);
        let p = x.powi(-5).unwrap();
        assert!(p.contains_rational(&q("3/7").powi(-5).unwrap()));
    }
}
