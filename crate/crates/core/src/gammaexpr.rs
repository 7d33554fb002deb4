//! Symbolic constants: signed products of rational powers of rationals, a
//! power of π, integer powers of Γ at rational arguments, and integer powers
//! of single-radical surds p + q√d.
//!
//! Equality is decided numerically (see [`ge_num_equal`]); no symbolic
//! normal form beyond merging like factors is attempted.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::mpreal::{gamma_bits, pi, pow_rational, BigReal, Bound, Precision};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    EqualWithinBounds,
    Distinct,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::EqualWithinBounds => "equal-within-bounds",
            Verdict::Distinct => "distinct",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// (p + q√d)^exp with p + q√d > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surd {
    pub p: Rational,
    pub q: Rational,
    pub d: Rational,
}

impl Surd {
    pub fn new(p: Rational, q: Rational, d: Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::InvalidExpr(format!("surd radicand {d} is negative")));
        }
        let s = Surd { p, q, d };
        if !s.is_positive() {
            return Err(Error::InvalidExpr(format!("surd {s} is not positive")));
        }
        Ok(s)
    }

    /// Exact sign test of p + q√d.
    fn is_positive(&self) -> bool {
        let (p, q, d) = (&self.p, &self.q, &self.d);
        if q.is_zero() || d.is_zero() {
            return p.is_positive();
        }
        let p2 = p * p;
        let q2d = &(q * q) * d;
        match (p.is_negative(), q.is_negative()) {
            (false, false) => true,
            (false, true) => p2 > q2d,
            (true, false) => q2d > p2,
            (true, true) => false,
        }
    }

    /// The value when no radical survives (q = 0 or d a rational square).
    fn as_rational(&self) -> Option<Rational> {
        if self.q.is_zero() || self.d.is_zero() {
            return Some(self.p.clone());
        }
        let (n, m) = (self.d.numer(), self.d.denom());
        let (rn, rm) = (n.sqrt(), m.sqrt());
        if &(&rn * &rn) == n && &(&rm * &rm) == m {
            let root = Rational::new(rn, rm).expect("nonzero");
            return Some(&self.p + &(&self.q * &root));
        }
        None
    }

    fn eval(&self, bits: u32) -> Result<BigReal> {
        let root = BigReal::from_rational(&self.d, bits).sqrt()?;
        Ok(&BigReal::from_rational(&self.p, bits) + &root.mul_rational(&self.q))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            write!(f, "{}√{}", self.q, self.d)
        } else {
            write!(f, "{} + {}√{}", self.p, self.q, self.d)
        }
    }
}

/// A signed product of constant factors. Construct through the builder
/// methods; every constructor leaves the expression in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaExpr {
    negative: bool,
    rat: BTreeMap<Rational, Rational>,
    pi: Rational,
    gamma: BTreeMap<Rational, i64>,
    surd: BTreeMap<Surd, i64>,
}

impl Default for GammaExpr {
    fn default() -> Self {
        Self::one()
    }
}

impl GammaExpr {
    pub fn one() -> Self {
        GammaExpr {
            negative: false,
            rat: BTreeMap::new(),
            pi: Rational::zero(),
            gamma: BTreeMap::new(),
            surd: BTreeMap::new(),
        }
    }

    /// A signed rational constant.
    pub fn rational(q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidExpr("zero is not a product of factors".into()));
        }
        let mut e = Self::rat_pow(&q.abs(), &Rational::one())?;
        e.negative = q.is_negative();
        Ok(e)
    }

    /// base^exp for a positive rational base.
    pub fn rat_pow(base: &Rational, exp: &Rational) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::InvalidExpr(format!("rational base {base} must be positive")));
        }
        let mut e = Self::one();
        add_rat(&mut e.rat, base.clone(), exp.clone());
        Ok(e)
    }

    pub fn pi_pow(exp: &Rational) -> Self {
        GammaExpr { pi: exp.clone(), ..Self::one() }
    }

    /// Γ(arg)^k
    pub fn gamma(arg: &Rational, k: i64) -> Result<Self> {
        if arg.is_nonpositive_integer() {
            return Err(Error::InvalidExpr(format!("Γ({arg}) is a pole")));
        }
        let mut e = Self::one();
        add_int(&mut e.gamma, arg.clone(), k);
        Ok(e)
    }

    /// (p + q√d)^k
    pub fn surd(p: &Rational, q: &Rational, d: &Rational, k: i64) -> Result<Self> {
        let s = Surd::new(p.clone(), q.clone(), d.clone())?;
        let mut e = Self::one();
        add_surd(&mut e, s, k);
        Ok(e)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn mul(&self, other: &GammaExpr) -> GammaExpr {
        ge_mul(self, other)
    }

    /// Integer power (negative powers invert every factor).
    pub fn powi(&self, n: i64) -> GammaExpr {
        let nq = Rational::int(n);
        let mut out = Self::one();
        out.negative = self.negative && n % 2 != 0;
        for (b, e) in &self.rat {
            add_rat(&mut out.rat, b.clone(), e * &nq);
        }
        out.pi = &self.pi * &nq;
        for (a, k) in &self.gamma {
            add_int(&mut out.gamma, a.clone(), k * n);
        }
        for (s, k) in &self.surd {
            add_int(&mut out.surd, s.clone(), k * n);
        }
        out
    }

    pub fn recip(&self) -> GammaExpr {
        self.powi(-1)
    }

    pub fn rational_factors(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.rat.iter()
    }

    pub fn pi_exponent(&self) -> &Rational {
        &self.pi
    }

    pub fn gamma_factors(&self) -> impl Iterator<Item = (&Rational, i64)> {
        self.gamma.iter().map(|(a, k)| (a, *k))
    }

    pub fn surd_factors(&self) -> impl Iterator<Item = (&Surd, i64)> {
        self.surd.iter().map(|(s, k)| (s, *k))
    }

    fn factor_count(&self) -> usize {
        self.rat.len() + self.gamma.len() + self.surd.len() + 1
    }
}

fn add_rat(map: &mut BTreeMap<Rational, Rational>, base: Rational, exp: Rational) {
    if base.is_one() || exp.is_zero() {
        return;
    }
    let slot = map.entry(base.clone()).or_insert_with(Rational::zero);
    *slot = &*slot + &exp;
    if slot.is_zero() {
        map.remove(&base);
    }
}

fn add_surd(e: &mut GammaExpr, s: Surd, k: i64) {
    match s.as_rational() {
        Some(r) => add_rat(&mut e.rat, r, Rational::int(k)),
        None => add_int(&mut e.surd, s, k),
    }
}

fn add_int<K: Ord + Clone>(map: &mut BTreeMap<K, i64>, key: K, k: i64) {
    if k == 0 {
        return;
    }
    let slot = map.entry(key.clone()).or_insert(0);
    *slot += k;
    if *slot == 0 {
        map.remove(&key);
    }
}

/// Canonical product of two expressions.
pub fn ge_mul(x: &GammaExpr, y: &GammaExpr) -> GammaExpr {
    let mut out = x.clone();
    out.negative ^= y.negative;
    for (b, e) in &y.rat {
        add_rat(&mut out.rat, b.clone(), e.clone());
    }
    out.pi = &out.pi + &y.pi;
    for (a, k) in &y.gamma {
        add_int(&mut out.gamma, a.clone(), *k);
    }
    for (s, k) in &y.surd {
        add_int(&mut out.surd, s.clone(), *k);
    }
    out
}

/// Numerical value with a rigorous bound.
pub fn ge_eval(e: &GammaExpr, prec: Precision) -> Result<BigReal> {
    let bits = prec.work_bits();
    // every factor contributes a few ulps of relative error; powers amplify
    let max_k = e.gamma.values().chain(e.surd.values()).map(|k| k.unsigned_abs()).max().unwrap_or(1);
    let inner = bits + 16 + 2 * (64 - (e.factor_count() as u64 * max_k).leading_zeros());
    let mut acc = BigReal::one(inner);
    for (b, x) in &e.rat {
        acc = &acc * &pow_rational(&BigReal::from_rational(b, inner), x)?;
    }
    if !e.pi.is_zero() {
        acc = &acc * &pow_rational(&pi(inner), &e.pi)?;
    }
    for (a, k) in &e.gamma {
        acc = &acc * &gamma_bits(a, inner)?.powi(*k)?;
    }
    for (s, k) in &e.surd {
        acc = &acc * &s.eval(inner)?.powi(*k)?;
    }
    if e.negative {
        acc = -&acc;
    }
    Ok(acc.with_prec(bits))
}

/// sin(πx) for x with denominator in {1, 2, 3, 4, 6}, as (negative, surd).
fn sin_pi_table(x: &Rational) -> Option<(bool, Surd)> {
    let two = Rational::int(2);
    let r = x - &(&two * &Rational::int((x / &two).floor()));
    let (neg, r) = if r >= Rational::one() { (true, &r - &Rational::one()) } else { (false, r) };
    let r = if r > Rational::frac(1, 2) { &Rational::one() - &r } else { r };
    let half = Rational::frac(1, 2);
    let surd = |p: Rational, q: Rational, d: i64| Surd { p, q, d: Rational::int(d) };
    let val = if r == Rational::frac(1, 6) {
        surd(half, Rational::zero(), 1)
    } else if r == Rational::frac(1, 4) {
        surd(Rational::zero(), half, 2)
    } else if r == Rational::frac(1, 3) {
        surd(Rational::zero(), half, 3)
    } else if r == half {
        surd(Rational::one(), Rational::zero(), 1)
    } else {
        return None;
    };
    Some((neg, val))
}

/// Replace Γ(x)^k Γ(1−x)^k by (π / sin πx)^k where sin πx is a table surd.
/// Pairs as many factors as the exponents allow (same sign required).
pub fn ge_reflect(e: &GammaExpr, x: &Rational) -> Result<GammaExpr> {
    if x.is_integer() {
        return Err(Error::RewriteRefused(format!("reflection at integer {x}")));
    }
    let y = &Rational::one() - x;
    let kx = e.gamma.get(x).copied().unwrap_or(0);
    let ky = e.gamma.get(&y).copied().unwrap_or(0);
    let m = if x == &y {
        kx / 2
    } else if kx.signum() == ky.signum() {
        kx.signum() * kx.abs().min(ky.abs())
    } else {
        0
    };
    if m == 0 {
        return Err(Error::RewriteRefused(format!("no Γ({x})Γ({y}) pair with compatible exponents")));
    }
    let (neg, sine) =
        sin_pi_table(x).ok_or_else(|| Error::RewriteRefused(format!("sin(π·{x}) is not in the surd table")))?;
    let mut out = e.clone();
    add_int(&mut out.gamma, x.clone(), -m);
    add_int(&mut out.gamma, y, -m);
    out.pi = &out.pi + &Rational::int(m);
    add_surd(&mut out, sine, -m);
    out.negative ^= neg && m % 2 != 0;
    Ok(out)
}

/// Compare two enclosures at `digits` decimal digits.
///
/// Equal when the intervals overlap and their combined radius is at most
/// 10^(10 − digits)·max(1, |x|); distinct when they are disjoint.
pub fn num_verdict(x: &BigReal, y: &BigReal, digits: u32) -> Verdict {
    if !x.overlaps(y) {
        return Verdict::Distinct;
    }
    let radius = x.err().add(y.err());
    let tol_exp = 10 - digits as i64;
    let ten = Rational::int(10);
    let tol = BigReal::from_rational(&ten.powi(tol_exp).expect("nonzero"), 64).mag_down();
    let scale = x.mag_down().max(Bound::from_u64(1));
    if radius <= tol.mul_down(scale) {
        Verdict::EqualWithinBounds
    } else {
        Verdict::Inconclusive
    }
}

/// Evaluate both sides at `prec` and compare with [`num_verdict`].
pub fn ge_num_equal(x: &GammaExpr, y: &GammaExpr, prec: Precision) -> Result<Verdict> {
    let a = ge_eval(x, prec)?;
    let b = ge_eval(y, prec)?;
    Ok(num_verdict(&a, &b, prec.target_digits()))
}

/// A sum of signed products, for closed forms that are not a single product.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GammaSum(pub Vec<GammaExpr>);

impl GammaSum {
    pub fn eval(&self, prec: Precision) -> Result<BigReal> {
        let inner = prec.plus_bits(16);
        let mut acc = BigReal::zero(inner.work_bits());
        for t in &self.0 {
            acc = &acc + &ge_eval(t, inner)?;
        }
        Ok(acc.with_prec(prec.work_bits()))
    }
}

impl From<GammaExpr> for GammaSum {
    fn from(e: GammaExpr) -> Self {
        GammaSum(vec![e])
    }
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (b, e) in &self.rat {
            let base = if b.is_integer() { b.to_string() } else { format!("({b})") };
            parts.push(if e.is_one() { base } else { format!("{base}^({e})") });
        }
        if !self.pi.is_zero() {
            parts.push(if self.pi.is_one() { "π".into() } else { format!("π^({})", self.pi) });
        }
        for (a, k) in &self.gamma {
            parts.push(if *k == 1 { format!("Γ({a})") } else { format!("Γ({a})^{k}") });
        }
        for (s, k) in &self.surd {
            parts.push(if *k == 1 { format!("({s})") } else { format!("({s})^{k}") });
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("·") };
        if self.negative {
            write!(f, "-{body}")
        } else {
            f.write_str(&body)
        }
    }
}

impl fmt::Display for GammaSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.0.iter().enumerate() {
            let s = t.to_string();
            match (i, s.strip_prefix('-')) {
                (0, _) => f.write_str(&s)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

// JSON form: {"sign": -1, "rat": [["185039", "7/24"]], "pi": "-2",
//             "gamma": [["1/8", 3]], "surd": [["1", "1", "2", -1]]}
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpr {
    #[serde(default = "one_sign", skip_serializing_if = "is_one_sign")]
    sign: i8,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    rat: Vec<(Rational, Rational)>,
    #[serde(default, skip_serializing_if = "Rational::is_zero")]
    pi: Rational,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    gamma: Vec<(Rational, i64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    surd: Vec<(Rational, Rational, Rational, i64)>,
}

fn one_sign() -> i8 {
    1
}

fn is_one_sign(s: &i8) -> bool {
    *s == 1
}

impl Serialize for GammaExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawExpr {
            sign: if self.negative { -1 } else { 1 },
            rat: self.rat.iter().map(|(b, e)| (b.clone(), e.clone())).collect(),
            pi: self.pi.clone(),
            gamma: self.gamma.iter().map(|(a, k)| (a.clone(), *k)).collect(),
            surd: self.surd.iter().map(|(x, k)| (x.p.clone(), x.q.clone(), x.d.clone(), *k)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawExpr::deserialize(d)?;
        let mut e = GammaExpr::one();
        match raw.sign {
            1 => {}
            -1 => e.negative = true,
            s => return Err(D::Error::custom(format!("sign must be 1 or -1, got {s}"))),
        }
        let chk = |r: Result<GammaExpr>| r.map_err(|err| D::Error::custom(err.to_string()));
        for (b, x) in raw.rat {
            e = e.mul(&chk(GammaExpr::rat_pow(&b, &x))?);
        }
        e = e.mul(&GammaExpr::pi_pow(&raw.pi));
        for (a, k) in raw.gamma {
            e = e.mul(&chk(GammaExpr::gamma(&a, k))?);
        }
        for (p, q, dd, k) in raw.surd {
            e = e.mul(&chk(GammaExpr::surd(&p, &q, &dd, k))?);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn g(a: &str, k: i64) -> GammaExpr {
        GammaExpr::gamma(&q(a), k).unwrap()
    }

    #[test]
    fn gamma_half_squared_over_pi() {
        let p = Precision::digits(50);
        let e = g("1/2", 2).mul(&GammaExpr::pi_pow(&q("-1")));
        let v = ge_eval(&e, p).unwrap();
        assert!(v.contains_rational(&Rational::one()));
        assert_eq!(ge_num_equal(&e, &GammaExpr::one(), p).unwrap(), Verdict::EqualWithinBounds);
    }

    #[test]
    fn mul_merges_and_cancels() {
        let x = g("1/8", 1).mul(&g("1/8", 2));
        assert_eq!(x, g("1/8", 3));
        assert_eq!(x.mul(&GammaExpr::one()), x);
        assert_eq!(x.mul(&x.recip()), GammaExpr::one());
        let r = GammaExpr::rat_pow(&q("2"), &q("1/3")).unwrap().mul(&GammaExpr::rat_pow(&q("2"), &q("-1/3")).unwrap());
        assert_eq!(r, GammaExpr::one());
    }

    #[test]
    fn distinct_values() {
        let p = Precision::digits(30);
        let a = GammaExpr::rational(&q("2/3")).unwrap().mul(&GammaExpr::rat_pow(&q("7"), &q("1/2")).unwrap());
        let b = GammaExpr::rational(&q("3/4")).unwrap().mul(&GammaExpr::rat_pow(&q("3"), &q("1/2")).unwrap());
        assert_eq!(ge_num_equal(&a, &b, p).unwrap(), Verdict::Distinct);
    }

    #[test]
    fn reflection_table() {
        let p = Precision::digits(40);
        let e = g("1/2", 2);
        let r = ge_reflect(&e, &q("1/2")).unwrap();
        assert_eq!(r, GammaExpr::pi_pow(&Rational::one()));
        let e = g("1/4", 1).mul(&g("3/4", 1));
        let r = ge_reflect(&e, &q("1/4")).unwrap();
        let expect = GammaExpr::pi_pow(&Rational::one()).mul(&GammaExpr::rat_pow(&q("2"), &q("1/2")).unwrap());
        assert_eq!(ge_num_equal(&r, &expect, p).unwrap(), Verdict::EqualWithinBounds);
        assert_eq!(ge_num_equal(&r, &e, p).unwrap(), Verdict::EqualWithinBounds);
        let e = g("1/8", 1).mul(&g("7/8", 1));
        assert!(matches!(ge_reflect(&e, &q("1/8")), Err(Error::RewriteRefused(_))));
        assert!(matches!(ge_reflect(&g("1/3", 1), &q("1/3")), Err(Error::RewriteRefused(_))));
    }

    #[test]
    fn reflection_outside_unit_interval() {
        // Γ(4/3)Γ(-1/3) = π / sin(4π/3) < 0
        let p = Precision::digits(30);
        let e = g("4/3", 1).mul(&g("-1/3", 1));
        let r = ge_reflect(&e, &q("4/3")).unwrap();
        assert!(r.is_negative());
        assert_eq!(ge_num_equal(&r, &e, p).unwrap(), Verdict::EqualWithinBounds);
    }

    #[test]
    fn theorem_rhs_at_half() {
        // 2·√π/3·Γ(3/2)/Γ(1)² = π/3
        let p = Precision::digits(40);
        let e = GammaExpr::rat_pow(&q("2"), &Rational::one())
            .unwrap()
            .mul(&GammaExpr::pi_pow(&q("1/2")))
            .mul(&GammaExpr::rational(&q("1/3")).unwrap())
            .mul(&g("3/2", 1))
            .mul(&g("1", -2));
        let v = ge_eval(&e, p).unwrap();
        assert!(v.overlaps(&pi(p.work_bits()).mul_rational(&q("1/3"))));
    }

    #[test]
    fn inconclusive_when_bounds_are_wide() {
        let x = BigReal::from_rational(&q("1/3"), 40);
        assert_eq!(num_verdict(&x, &x, 60), Verdict::Inconclusive);
        let y = BigReal::from_rational(&q("1/3"), 400);
        assert_eq!(num_verdict(&y, &y, 60), Verdict::EqualWithinBounds);
    }

    #[test]
    fn json_schema() {
        let s = r#"{"rat":[["3","-1/8"],["672","-1"],["185039","7/24"]],"pi":"-2","gamma":[["1/8",3],["5/8",1]],"surd":[["1","1","2",-1]]}"#;
        let e: GammaExpr = serde_json::from_str(s).unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), s);
        let v = ge_eval(&e, Precision::digits(20)).unwrap();
        assert!((v.to_f64() - 1.1480829501508851).abs() < 1e-12, "{}", v.to_f64());
        assert!(serde_json::from_str::<GammaExpr>(r#"{"gamma":[["0",1]]}"#).is_err());
        assert!(serde_json::from_str::<GammaExpr>(r#"{"gamma":[["-2",1]]}"#).is_err());
        assert!(serde_json::from_str::<GammaExpr>(r#"{"rat":[["-2","1/2"]]}"#).is_err());
        assert!(serde_json::from_str::<GammaExpr>(r#"{"surd":[["1","-1","2",1]]}"#).is_err());
        assert!(serde_json::from_str::<GammaExpr>(r#"{"bogus":1}"#).is_err());
        let neg: GammaExpr = serde_json::from_str(r#"{"sign":-1,"rat":[["2","1"]]}"#).unwrap();
        assert!(neg.is_negative());
    }

    #[test]
    fn sum_with_signs() {
        let p = Precision::digits(30);
        let s = GammaSum(vec![
            GammaExpr::rational(&q("6")).unwrap().mul(&GammaExpr::rat_pow(&q("3"), &q("-1/2")).unwrap()),
            GammaExpr::rational(&q("-1")).unwrap().mul(&GammaExpr::rat_pow(&q("12"), &q("1/2")).unwrap()),
        ]);
        // 6/√3 − √12 = 0
        let v = s.eval(p).unwrap();
        assert!(v.contains_rational(&Rational::zero()));
        assert_eq!(s.to_string(), "3^(-1/2)·6 - 12^(1/2)");
    }
}
