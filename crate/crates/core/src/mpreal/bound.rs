use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

/// Mantissa width kept by a [`Bound`]. Products of two mantissas fit in u128.
const MBITS: u32 = 48;

/// A nonnegative dyadic number `m * 2^e` with a short mantissa, used for error
/// bounds and magnitude bounds. Constructors and arithmetic state their
/// rounding direction explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bound {
    m: u64,
    e: i64,
}

impl Bound {
    pub const ZERO: Bound = Bound { m: 0, e: 0 };

    pub fn is_zero(&self) -> bool {
        self.m == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Bound {
        Bound { m: 1, e }
    }

    pub fn from_u64(m: u64) -> Bound {
        Self::from_u128(m as u128, 0, true)
    }

    fn from_u128(m: u128, e: i64, up: bool) -> Bound {
        if m == 0 {
            return Bound::ZERO;
        }
        let bits = 128 - m.leading_zeros();
        if bits <= MBITS {
            return Bound { m: m as u64, e };
        }
        let shift = bits - MBITS;
        let mut t = (m >> shift) as u64;
        if up && (m & ((1u128 << shift) - 1)) != 0 {
            t += 1;
        }
        Bound { m: t, e: e + shift as i64 }.normalized()
    }

    fn normalized(self) -> Bound {
        if self.m >> MBITS != 0 {
            // only reachable after a rounding carry
            Bound { m: self.m.div_ceil(2), e: self.e + 1 }
        } else {
            self
        }
    }

    /// Upper bound on `|man| * 2^exp`.
    pub fn from_big_up(man: &BigInt, exp: i64) -> Bound {
        Self::from_biguint(man.magnitude(), exp, true)
    }

    /// Lower bound on `|man| * 2^exp`.
    pub fn from_big_down(man: &BigInt, exp: i64) -> Bound {
        Self::from_biguint(man.magnitude(), exp, false)
    }

    fn from_biguint(mag: &BigUint, exp: i64, up: bool) -> Bound {
        if mag.is_zero() {
            return Bound::ZERO;
        }
        let bits = mag.bits();
        if bits <= 64 {
            return Self::from_u128(mag.to_u64().unwrap() as u128, exp, up);
        }
        let shift = bits - 64;
        let top = (mag >> shift).to_u64().unwrap();
        let exact = mag.trailing_zeros().unwrap_or(0) >= shift;
        let b = Self::from_u128(top as u128, exp + shift as i64, up);
        if up && !exact {
            // the dropped bits were nonzero; nudge up one unit in the last place
            Bound { m: b.m + 1, e: b.e }.normalized()
        } else {
            b
        }
    }

    /// Upper bound on a positive finite f64 (0 for nonpositive input).
    pub fn from_f64_up(x: f64) -> Bound {
        if x.is_nan() || x <= 0.0 {
            return Bound::ZERO;
        }
        assert!(x.is_finite(), "non-finite bound");
        let (m, e) = frexp(x);
        // m in [0.5, 1): scale to 53-bit integer, exact
        let mi = (m * (1u64 << 53) as f64) as u64;
        Self::from_u128(mi as u128, e as i64 - 53, true)
    }

    /// The exact value as `(mantissa, exponent)` big integer pair.
    pub fn to_big(&self) -> (BigInt, i64) {
        (BigInt::from(self.m), self.e)
    }

    pub fn to_f64(&self) -> f64 {
        if self.m == 0 {
            return 0.0;
        }
        if self.e > 1100 {
            return f64::INFINITY;
        }
        if self.e < -1200 {
            return 0.0;
        }
        let half = (self.e / 2) as i32;
        (self.m as f64) * 2f64.powi(half) * 2f64.powi(self.e as i32 - half)
    }

    /// Upper estimate of log2 of the value; `None` for zero.
    pub fn log2_ceil(&self) -> Option<i64> {
        if self.m == 0 {
            return None;
        }
        let bits = 64 - self.m.leading_zeros() as i64;
        Some(self.e + bits)
    }

    /// Floor of log2 of the value; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.m == 0 {
            return None;
        }
        let bits = 64 - self.m.leading_zeros() as i64;
        Some(self.e + bits - 1)
    }

    /// Sum rounded up.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Bound) -> Bound {
        if self.m == 0 {
            return o;
        }
        if o.m == 0 {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = hi.e - lo.e;
        if gap > 64 {
            // lo < 2^(lo.e + MBITS) <= one unit of hi's last place
            return Bound { m: hi.m + 1, e: hi.e }.normalized();
        }
        let s = ((hi.m as u128) << gap) + lo.m as u128;
        Self::from_u128(s, lo.e, true)
    }

    /// Product rounded up.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Bound) -> Bound {
        if self.m == 0 || o.m == 0 {
            return Bound::ZERO;
        }
        Self::from_u128(self.m as u128 * o.m as u128, self.e + o.e, true)
    }

    /// Product rounded down.
    pub fn mul_down(self, o: Bound) -> Bound {
        if self.m == 0 || o.m == 0 {
            return Bound::ZERO;
        }
        Self::from_u128(self.m as u128 * o.m as u128, self.e + o.e, false)
    }

    pub fn mul_u64(self, k: u64) -> Bound {
        self.mul(Bound::from_u64(k))
    }

    pub fn mul_pow2(self, k: i64) -> Bound {
        if self.m == 0 {
            return self;
        }
        Bound { m: self.m, e: self.e + k }
    }

    /// Quotient rounded up; `den` must be nonzero.
    pub fn div_up(self, den: Bound) -> Bound {
        assert!(den.m != 0, "division of bound by zero");
        if self.m == 0 {
            return Bound::ZERO;
        }
        let n = (self.m as u128) << 64;
        let q = n.div_ceil(den.m as u128);
        Self::from_u128(q, self.e - den.e - 64, true)
    }

    /// Quotient rounded down; `den` must be nonzero.
    pub fn div_down(self, den: Bound) -> Bound {
        assert!(den.m != 0, "division of bound by zero");
        if self.m == 0 {
            return Bound::ZERO;
        }
        let n = (self.m as u128) << 64;
        Self::from_u128(n / den.m as u128, self.e - den.e - 64, false)
    }

    /// Upper bound on the square root.
    pub fn sqrt_up(self) -> Bound {
        if self.m == 0 {
            return self;
        }
        let (mut m, mut e) = ((self.m as u128) << 64, self.e - 64);
        if e % 2 != 0 {
            m <<= 1;
            e -= 1;
        }
        let mut r = (m as f64).sqrt() as u128;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        if r * r != m {
            r += 1;
        }
        Self::from_u128(r, e / 2, true)
    }

    pub fn max(self, o: Bound) -> Bound {
        if self >= o {
            self
        } else {
            o
        }
    }

    pub fn min(self, o: Bound) -> Bound {
        if self <= o {
            self
        } else {
            o
        }
    }

    /// Exact comparison against a signed-magnitude dyadic `|man| * 2^exp`.
    pub fn cmp_big(&self, man: &BigInt, exp: i64) -> Ordering {
        let (bm, be) = self.to_big();
        cmp_dyadic(&bm, be, &BigInt::from_biguint(Sign::Plus, man.magnitude().clone()), exp)
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.m == 0, o.m == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (a, b) = (self.log2_floor().unwrap(), o.log2_floor().unwrap());
        if a != b {
            return a.cmp(&b);
        }
        let e = self.e.min(o.e);
        let am = (self.m as u128) << (self.e - e);
        let bm = (o.m as u128) << (o.e - e);
        am.cmp(&bm)
    }
}

impl fmt::Debug for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bound({}·2^{})", self.m, self.e)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            return write!(f, "0");
        }
        // decimal rendering via log10 of the dyadic, rounded up in the mantissa
        let l10 = (self.m as f64).log10() + self.e as f64 * std::f64::consts::LOG10_2;
        let exp10 = l10.floor();
        let mant = 10f64.powf(l10 - exp10);
        let mant = (mant * 10.0 * (1.0 + 1e-12)).ceil() / 10.0;
        write!(f, "{mant:.1}e{}", exp10 as i64)
    }
}

/// Compare `a * 2^ea` with `b * 2^eb` exactly.
pub(crate) fn cmp_dyadic(a: &BigInt, ea: i64, b: &BigInt, eb: i64) -> Ordering {
    let e = ea.min(eb);
    let sa = (ea - e) as usize;
    let sb = (eb - e) as usize;
    // avoid huge shifts when the magnitudes are wildly different
    let la = a.bits() as i64 + ea;
    let lb = b.bits() as i64 + eb;
    if a.sign() == b.sign() && a.sign() != Sign::NoSign && (la - lb).abs() > 2 {
        let bigger_mag = la > lb;
        return match (a.sign(), bigger_mag) {
            (Sign::Plus, true) | (Sign::Minus, false) => Ordering::Greater,
            _ => Ordering::Less,
        };
    }
    if a.sign() != b.sign() {
        return a.sign().cmp(&b.sign());
    }
    (a << sa).cmp(&(b << sb))
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 {
        return (0.0, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        // subnormal
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = exp - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}
