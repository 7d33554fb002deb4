//! Arbitrary-precision reals with a rigorous absolute error bound.
//!
//! A [`BigReal`] is a dyadic midpoint `m · 2^e` plus a radius; every
//! operation returns an interval that contains the true result of the
//! operation applied to any points of its input intervals.

mod bound;
mod decimal;
mod elementary;
mod gamma;
mod kernels;
mod quad;
mod real;

use serde::{Deserialize, Serialize};

pub use bound::Bound;
pub use decimal::{parse_decimal, parse_decimal_rational};
pub use elementary::{
    asin, atan, cos_pi, cos_pi_real, exp, ln, ln2, pi, pow_rational, sin_cos_pi_rational, sin_pi, sin_pi_real, sqrt,
};
pub use gamma::{bernoulli_even, beta, gamma, gamma_bits, gamma_real};
pub use quad::{tanh_sinh, QuadOptions, QuadPoint, QuadResult};
pub use real::BigReal;

/// bits per decimal digit, rounded up
const BITS_PER_DIGIT: f64 = 3.3220;
/// Guard bits carried on top of the target precision.
pub const GUARD_BITS: u32 = 64 + 14;

/// Requested decimal accuracy and the binary working precision derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    target_digits: u32,
    work_bits: u32,
}

impl Precision {
    pub fn digits(d: u32) -> Self {
        let d = d.max(1);
        Precision { target_digits: d, work_bits: Self::bits_for(d) + GUARD_BITS }
    }

    /// Like [`Precision::digits`] with an explicit number of extra guard bits.
    pub fn with_guard(d: u32, guard: u32) -> Self {
        let d = d.max(1);
        Precision { target_digits: d, work_bits: Self::bits_for(d) + guard }
    }

    fn bits_for(d: u32) -> u32 {
        (d as f64 * BITS_PER_DIGIT).ceil() as u32
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    /// Bits needed to represent `target_digits` decimal digits.
    pub fn target_bits(&self) -> u32 {
        Self::bits_for(self.target_digits)
    }

    pub fn work_bits(&self) -> u32 {
        self.work_bits
    }

    /// Same target, twice the working precision. Used to retry inconclusive checks.
    pub fn doubled(&self) -> Self {
        Precision { target_digits: self.target_digits, work_bits: self.work_bits * 2 }
    }

    /// Extra working bits on top of the current ones.
    pub fn plus_bits(&self, extra: u32) -> Self {
        Precision { target_digits: self.target_digits, work_bits: self.work_bits + extra }
    }

    /// Whether `x` meets the target accuracy: its radius is at most
    /// `10^-digits · max(1, |x|)`.
    pub fn is_met_by(&self, x: &BigReal) -> bool {
        x.is_exact() || x.correct_digits().is_some_and(|d| d >= self.target_digits)
    }
}
