//! Gauss ₂F₁ with rational parameters.
//!
//! Evaluation routes: exact finite sums when an upper parameter is a
//! nonpositive integer, the power series with a rigorous tail bound for
//! |z| ≤ 9/10, and the Euler integral (tanh-sinh) closer to z = 1.

mod agm;
mod dispatch;
mod integral;
mod series;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub use agm::agm_k;
pub use dispatch::{f21_eval, f21_eval_integral, f21_eval_real, f21_eval_with, EvalOptions, Evaluation, Strategy};
pub use integral::f21_integral;
pub use series::{f21_series, f21_series_rational, f21_terminating, SeriesResult, DEFAULT_TERM_CAP};

/// Parameters (a, b; c) of ₂F₁.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct HypParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl TryFrom<RawParams> for HypParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        HypParams::new(r.a, r.b, r.c)
    }
}

impl From<HypParams> for RawParams {
    fn from(p: HypParams) -> Self {
        RawParams { a: p.a, b: p.b, c: p.c }
    }
}

/// `-x` when x is a nonpositive integer.
fn nonpos_index(x: &Rational) -> Option<u64> {
    if x.is_nonpositive_integer() {
        (-x).to_i64().map(|n| n as u64)
    } else {
        None
    }
}

impl HypParams {
    /// Checks that the lower parameter is not a pole, unless the series
    /// terminates before the pole is reached.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let p = HypParams { a, b, c };
        if let Some(m) = nonpos_index(&p.c) {
            match p.termination() {
                Some(n0) if n0 <= m => {}
                _ => return Err(Error::Pole(format!("lower parameter c = {}", p.c))),
            }
        }
        Ok(p)
    }

    pub fn from_strs(a: &str, b: &str, c: &str) -> Result<Self> {
        Self::new(a.parse()?, b.parse()?, c.parse()?)
    }

    /// Index of the last nonzero term when an upper parameter is a
    /// nonpositive integer.
    pub fn termination(&self) -> Option<u64> {
        match (nonpos_index(&self.a), nonpos_index(&self.b)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    pub fn swapped(&self) -> HypParams {
        HypParams { a: self.b.clone(), b: self.a.clone(), c: self.c.clone() }
    }

    /// c − a − b
    pub fn excess(&self) -> Rational {
        &(&self.c - &self.a) - &self.b
    }
}

impl std::fmt::Display for HypParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}; {})", self.a, self.b, self.c)
    }
}

/// Rising factorial (x)_n = x(x+1)…(x+n−1).
pub fn pochhammer(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..n {
        if t.is_zero() {
            return Rational::zero();
        }
        acc = acc * &t;
        t = t + Rational::one();
    }
    acc
}

/// Ratio of Pochhammer products Π(u_i)_n / Π(l_j)_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PochRatio {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
}

impl PochRatio {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Self {
        PochRatio { upper, lower }
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        let num = self.upper.iter().fold(Rational::one(), |acc, u| acc * pochhammer(u, n));
        let den = self.lower.iter().fold(Rational::one(), |acc, l| acc * pochhammer(l, n));
        if den.is_zero() {
            return Err(Error::Pole(format!("lower Pochhammer vanishes at n = {n}")));
        }
        num.checked_div(&den)
    }
}
