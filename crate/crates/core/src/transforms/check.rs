use serde::Serialize;

use crate::gammaexpr::{num_verdict, Verdict};
use crate::mpreal::{BigReal, Bound, Precision};

/// Outcome of comparing two independently computed enclosures.
#[derive(Clone, Debug, Serialize)]
pub struct StepCheck {
    pub step: String,
    pub verdict: Verdict,
    pub lhs: String,
    pub rhs: String,
    /// decimal digits to which the two enclosures are known to agree
    pub agreement_digits: u32,
}

impl StepCheck {
    pub fn compare(step: impl Into<String>, x: &BigReal, y: &BigReal, prec: Precision) -> Self {
        let shown = prec.target_digits() as usize + 5;
        StepCheck {
            step: step.into(),
            verdict: num_verdict(x, y, prec.target_digits()),
            lhs: x.to_decimal_with_bound(shown),
            rhs: y.to_decimal_with_bound(shown),
            agreement_digits: agreement_digits(x, y),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::EqualWithinBounds
    }
}

/// −log10 of (|x − y| + both radii) relative to max(1, |x|).
pub fn agreement_digits(x: &BigReal, y: &BigReal) -> u32 {
    let d = x - y;
    let spread = d.mid_mag_up().add(d.err());
    let Some(l) = spread.log2_ceil() else { return u32::MAX };
    let scale = x.mag_down().max(Bound::from_u64(1));
    let l2 = l - scale.log2_floor().unwrap_or(0);
    (-(l2 as f64) * std::f64::consts::LOG10_2).floor().max(0.0) as u32
}
