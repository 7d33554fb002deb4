//! Decimal text rendering and parsing for [`BigReal`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::BigReal;
use crate::error::{Error, Result};
use crate::exact::Rational;

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Round `q` to the nearest integer, ties away from zero.
fn round_half_away(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let n = q.numer() * &two + if q.is_negative() { -q.denom() } else { q.denom().clone() };
    let d = q.denom() * two;
    let (quot, _) = n.div_rem(&d);
    quot
}

pub(crate) fn format_sig(x: &BigReal, digits: usize) -> String {
    let digits = digits.max(1);
    if x.mid_is_zero() {
        return "0".to_string();
    }
    let v = x.mid_rational();
    let neg = v.is_negative();
    let v = v.abs();
    let mut k = ((x.log2_floor().unwrap() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let scaled = loop {
        let shift = digits as i64 - 1 - k;
        let s = if shift >= 0 {
            &v * Rational::int(pow10(shift as u32))
        } else {
            &v / Rational::int(pow10((-shift) as u32))
        };
        let r = round_half_away(&s);
        let len = r.to_string().len();
        if len > digits {
            k += 1;
        } else if len < digits {
            k -= 1;
        } else {
            break r;
        }
    };
    let ds = scaled.to_string();
    let sign = if neg { "-" } else { "" };
    if (-5..21).contains(&k) {
        if k < 0 {
            let zeros = "0".repeat((-k - 1) as usize);
            format!("{sign}0.{zeros}{ds}")
        } else {
            let int_len = (k + 1) as usize;
            if int_len >= ds.len() {
                format!("{sign}{}{}", ds, "0".repeat(int_len - ds.len()))
            } else {
                format!("{sign}{}.{}", &ds[..int_len], &ds[int_len..])
            }
        }
    } else {
        let (head, tail) = ds.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{k}")
        } else {
            format!("{sign}{head}.{tail}e{k}")
        }
    }
}

/// Parse a decimal literal (`-12.5e-3`, `0.875`, `7`) into an exact rational.
pub fn parse_decimal_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseDecimal(s.to_string());
    let t = s.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    if neg {
        n = -n;
    }
    let e10 = exp - fp.len() as i64;
    if e10.unsigned_abs() > 1_000_000 {
        return Err(bad());
    }
    Ok(if e10 >= 0 { Rational::int(n * pow10(e10 as u32)) } else { Rational::new(n, pow10((-e10) as u32))? })
}

/// Parse a decimal literal into a [`BigReal`] at `prec` bits. An optional
/// `± bound` suffix (as produced by the formatter) widens the error.
pub fn parse_decimal(s: &str, prec: u32) -> Result<BigReal> {
    let (val, bound) = match s.split_once('±') {
        Some((v, b)) => (v, Some(b)),
        None => (s, None),
    };
    let q = parse_decimal_rational(val)?;
    let mut x = BigReal::from_rational(&q, prec);
    if let Some(b) = bound {
        let bq = parse_decimal_rational(b)?.abs();
        let bb = BigReal::from_rational(&bq, 64);
        x = x.add_err(bb.mag_up());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn formats_significant_digits() {
        let x = BigReal::from_rational(&q("1/3"), 200);
        assert_eq!(x.to_decimal(10), "0.3333333333");
        let y = BigReal::from_rational(&q("-22/7"), 200);
        assert_eq!(y.to_decimal(6), "-3.14286");
        let z = BigReal::from_rational(&q("1/1000000000"), 200);
        assert_eq!(z.to_decimal(3), "1.00e-9");
        let w = BigReal::from_int(123456, 64);
        assert_eq!(w.to_decimal(3), "123000");
        assert_eq!(BigReal::from_rational(&q("1/8"), 64).to_decimal(3), "0.125");
        assert_eq!(BigReal::from_rational(&q("99999/100000"), 64).to_decimal(2), "1.0");
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_decimal_rational("-12.5e-3").unwrap(), q("-1/80"));
        assert_eq!(parse_decimal_rational(".5").unwrap(), q("1/2"));
        assert_eq!(parse_decimal_rational("7").unwrap(), q("7"));
        assert!(parse_decimal_rational("1.2.3").is_err());
        assert!(parse_decimal_rational("abc").is_err());
        assert!(parse_decimal_rational("").is_err());
    }

    #[test]
    fn round_trip_with_bound_suffix() {
        let x = BigReal::from_rational(&q("2/3"), 200);
        let s = x.to_decimal_with_bound(40);
        let back = parse_decimal(&s, 200).unwrap();
        assert!(back.contains_rational(&q("2/3")) || back.overlaps(&x));
        let back = parse_decimal(&x.to_decimal(50), 200).unwrap();
        let diff = &back - &x;
        assert!(diff.mag_up().log2_ceil().unwrap() < -150);
    }
}
