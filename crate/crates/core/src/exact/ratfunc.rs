use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Reduced rational function `num/den` in one variable.
///
/// Canonical form: `gcd(num, den) = 1` and `den` is monic, so two equal
/// functions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Deserialize)]
struct RawRatFunc {
    num: Poly,
    den: Poly,
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRatFunc::deserialize(d)?;
        RatFunc::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc = den.leading().unwrap().recip()?;
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The identity map z.
    pub fn identity() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Degree of the map: max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("rational function pole at z = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `self ∘ inner`, i.e. `self(inner(z))`, fully reduced.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let num_h = self.num.homogenize(&inner.num, &inner.den);
        let num_h = if self.num.is_zero() { Poly::zero() } else { num_h };
        let den_h = self.den.homogenize(&inner.num, &inner.den);
        if den_h.is_zero() {
            return Err(Error::DegenerateComposition);
        }
        // self(N/D) = num_h / D^dn  /  (den_h / D^dd)
        let (num, den) = if dd >= dn {
            (&num_h * &inner.den.pow(dd - dn), den_h)
        } else {
            (num_h, &den_h * &inner.den.pow(dn - dd))
        };
        RatFunc::new(num, den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{self}]")
    }
}
