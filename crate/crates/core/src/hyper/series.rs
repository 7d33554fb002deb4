use super::HypParams;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::mpreal::{BigReal, Bound, Precision};

pub const DEFAULT_TERM_CAP: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub value: BigReal,
    /// number of terms summed
    pub terms: usize,
}

enum Arg<'a> {
    Exact(&'a Rational),
    Real(&'a BigReal),
}

impl Arg<'_> {
    fn abs_upper(&self) -> Rational {
        match self {
            Arg::Exact(z) => z.abs(),
            Arg::Real(z) => bound_to_rational(z.mag_up()),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Arg::Exact(z) => z.is_negative(),
            Arg::Real(z) => z.is_negative(),
        }
    }

    fn approx(&self) -> f64 {
        match self {
            Arg::Exact(z) => z.to_f64(),
            Arg::Real(z) => z.to_f64(),
        }
    }
}

fn bound_to_rational(b: Bound) -> Rational {
    let (m, e) = b.to_big();
    let two = Rational::int(2);
    Rational::int(m) * two.powi(e).expect("nonzero base")
}

fn rational_to_bound(q: &Rational) -> Bound {
    BigReal::from_rational(&q.abs(), 64).mag_up()
}

/// `max(0, x)`
fn pos(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x
    }
}

/// Upper bound on the term ratio |(a+k)(b+k)z / ((c+k)(1+k))| for all
/// k ≥ n, or None if some parameter shift a+k, b+k, c+k is not yet positive.
fn ratio_sup(p: &HypParams, n: u64, zabs: &Rational) -> Option<Rational> {
    let nn = Rational::int(n);
    let (an, bn, cn) = (&p.a + &nn, &p.b + &nn, &p.c + &nn);
    if !an.is_positive() || !bn.is_positive() || !cn.is_positive() {
        return None;
    }
    // |(a+k)/(1+k)| <= 1 + max(0, a-1)/(1+k), decreasing in k; likewise for (b+k)/(c+k)
    let f1 = Rational::one() + pos(&p.a - &Rational::one()) / (nn.clone() + Rational::one());
    let f2 = Rational::one() + pos(&p.b - &p.c) / cn;
    Some(zabs * &f1 * f2)
}

/// Rigorous bound on Σ_{k≥n} t_k given the next (unsummed) term t_n.
fn tail_bound(p: &HypParams, n: u64, z: &Arg, t_n: &BigReal) -> Option<Bound> {
    let zabs = z.abs_upper();
    let r = ratio_sup(p, n, &zabs)?;
    let tn = t_n.mag_up();
    if r < Rational::one() {
        let inv = (Rational::one() - r).recip().ok()?;
        return Some(tn.mul(rational_to_bound(&inv)));
    }
    // alternating signs with non-increasing magnitude: the remainder is
    // below the first omitted term, provided the terms tend to zero
    let vanishing = zabs < Rational::one() || (&p.excess() + &Rational::one()).is_positive();
    if z.is_negative() && zabs <= Rational::one() && vanishing && ratio_le_one(p, n, &zabs) {
        return Some(tn);
    }
    None
}

/// Exact check that |(a+k)(b+k)/((c+k)(1+k))|·|z| ≤ 1 for all k ≥ n when the
/// coarse bound is not good enough: the ratio tends to |z| and, for |z| = 1,
/// equals 1 − (c−a−b+1)/k + O(1/k²); we test monotone decrease directly.
fn ratio_le_one(p: &HypParams, n: u64, zabs: &Rational) -> bool {
    // (a+k)(b+k)|z| <= (c+k)(1+k) for all k >= n with everything positive:
    // difference D(k) = (c+k)(1+k) - |z|(a+k)(b+k) is quadratic in k with
    // leading coefficient 1-|z| >= 0; check D(n) >= 0 and D'(k) >= 0 from n on.
    let k = Rational::int(n);
    let one = Rational::one();
    let lead = &one - zabs;
    let lin = &(&p.c + &one) - &(zabs * &(&p.a + &p.b));
    let cst = &p.c - &(zabs * &(&p.a * &p.b));
    let d = &(&(&lead * &(&k * &k)) + &(&lin * &k)) + &cst;
    let dd = &(&lead * &(Rational::int(2) * &k)) + &lin;
    !d.is_negative() && !dd.is_negative()
}

fn series_impl(p: &HypParams, z: Arg, prec: Precision, cap: usize) -> Result<SeriesResult> {
    let bits = prec.work_bits();
    if let Some(n0) = p.termination() {
        if let Arg::Exact(z) = z {
            let v = f21_terminating(p, z)?;
            return Ok(SeriesResult { value: BigReal::from_rational(&v, bits), terms: n0 as usize + 1 });
        }
    } else {
        if p.c.is_nonpositive_integer() {
            return Err(Error::Pole(format!("lower parameter c = {}", p.c)));
        }
        let za = z.approx();
        if za.abs() > 1.0 || za == 1.0 || matches!(z, Arg::Exact(q) if q == &Rational::one()) {
            return Err(Error::Domain(format!("series needs |z| < 1 (z ≈ {za})")));
        }
    }
    let stop = p.termination();
    let one = BigReal::one(bits);
    let mut sum = one.clone();
    let mut term = one;
    let mut n: u64 = 0;
    let thresh_bits = bits as i64;
    loop {
        if stop == Some(n) {
            return Ok(SeriesResult { value: sum, terms: n as usize + 1 });
        }
        let nn = Rational::int(n);
        let ratio = (&(&p.a + &nn) * &(&p.b + &nn)) / (&(&p.c + &nn) * &(nn.clone() + Rational::one()));
        term = match &z {
            Arg::Exact(q) => term.mul_rational(&(&ratio * *q)),
            Arg::Real(x) => (&term * *x).mul_rational(&ratio),
        };
        n += 1;
        let check = stop.is_none() && n.is_multiple_of(8) && (term.mid_is_zero() || is_small(&term, &sum, thresh_bits));
        if check {
            if let Some(tail) = tail_bound(p, n, &z, &term) {
                let scale = sum.mag_down();
                let ok = match (tail.log2_ceil(), scale.log2_floor()) {
                    (None, _) => true,
                    (Some(t), Some(s)) => t < s - thresh_bits,
                    (Some(t), None) => t < -2 * thresh_bits,
                };
                if ok {
                    return Ok(SeriesResult { value: sum.add_err(tail), terms: n as usize });
                }
            }
        }
        sum = &sum + &term;
        if n as usize > cap {
            return Err(Error::TermCap(cap));
        }
    }
}

fn is_small(term: &BigReal, sum: &BigReal, bits: i64) -> bool {
    match (term.log2_floor(), sum.log2_floor()) {
        (Some(t), Some(s)) => t < s - bits + 8,
        (None, _) => true,
        (Some(t), None) => t < -2 * bits,
    }
}

/// ₂F₁(a, b; c; z) by direct summation with a rigorous tail bound.
pub fn f21_series(p: &HypParams, z: &BigReal, prec: Precision) -> Result<BigReal> {
    Ok(series_impl(p, Arg::Real(z), prec, DEFAULT_TERM_CAP)?.value)
}

/// Same as [`f21_series`] for an exact argument (each term is then formed
/// with a single exact rational multiplier) and an explicit term cap.
pub fn f21_series_rational(p: &HypParams, z: &Rational, prec: Precision, cap: usize) -> Result<SeriesResult> {
    series_impl(p, Arg::Exact(z), prec, cap)
}

/// Exact value of a terminating ₂F₁.
pub fn f21_terminating(p: &HypParams, z: &Rational) -> Result<Rational> {
    let n0 = p.termination().ok_or_else(|| Error::Domain(format!("{p} does not terminate")))?;
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for n in 0..n0 {
        let nn = Rational::int(n);
        let cn = &p.c + &nn;
        if cn.is_zero() {
            return Err(Error::Pole(format!("lower parameter c = {} reached at n = {}", p.c, n + 1)));
        }
        term = term * (&p.a + &nn) * (&p.b + &nn) / (cn * (nn + Rational::one())) * z;
        sum = sum + &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpreal::{asin, pi};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn hp(a: &str, b: &str, c: &str) -> HypParams {
        HypParams::from_strs(a, b, c).unwrap()
    }

    #[test]
    fn z_zero_is_one() {
        let p = Precision::digits(30);
        let v = f21_series_rational(&hp("1/3", "2/7", "5/4"), &Rational::zero(), p, 100).unwrap();
        assert!(v.value.contains_rational(&Rational::one()));
    }

    #[test]
    fn arcsin_quarter() {
        let p = Precision::digits(60);
        let v = f21_series_rational(&hp("1/2", "1/2", "3/2"), &q("1/4"), p, DEFAULT_TERM_CAP).unwrap().value;
        let third_pi = pi(p.work_bits()).mul_rational(&q("1/3"));
        assert!(v.overlaps(&third_pi));
        assert!(p.is_met_by(&v));
        // real-argument path agrees
        let z = BigReal::from_rational(&q("1/4"), p.work_bits());
        let w = f21_series(&hp("1/2", "1/2", "3/2"), &z, p).unwrap();
        assert!(w.overlaps(&v));
        let half = BigReal::from_rational(&q("1/2"), p.work_bits());
        assert!(asin(&half).unwrap().mul_pow2(1).overlaps(&v));
    }

    #[test]
    fn terminating_examples() {
        assert_eq!(f21_terminating(&hp("-1", "-3/2", "17/2"), &q("1/5")).unwrap(), q("88/85"));
        assert_eq!(f21_terminating(&hp("0", "5/7", "1/3"), &q("9")).unwrap(), Rational::one());
        assert!(f21_terminating(&hp("1/2", "1", "2"), &q("1/2")).is_err());
    }

    #[test]
    fn term_cap_and_domain() {
        let p = Precision::digits(50);
        let r = f21_series_rational(&hp("1/2", "1/2", "1"), &q("999/1000"), p, 1000);
        assert!(matches!(r, Err(Error::TermCap(1000))));
        assert!(f21_series_rational(&hp("1/2", "1/2", "1"), &q("3/2"), p, 1000).is_err());
        assert!(f21_series_rational(&hp("1/2", "1/2", "1"), &Rational::one(), p, 1000).is_err());
    }

    #[test]
    fn alternating_tail_at_minus_one() {
        // terms decay like n^(a+b-c-1); the coarse ratio bound is exactly 1
        let p = Precision::digits(20);
        let par = hp("1/2", "1/2", "30");
        let r = f21_series_rational(&par, &q("-1"), p, 10_000).unwrap();
        let other = crate::hyper::f21_eval(&par, &q("-1"), p).unwrap();
        assert!(r.value.overlaps(&other));
        assert!(p.is_met_by(&r.value));
    }
}
