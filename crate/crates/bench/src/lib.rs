//! Fixtures shared by the criterion benches in `benches/`.

use hypcheck::{HypParams, Rational};

/// ₂F₁(7/48, 31/48; 9/8) and the degree-12 argument of the main evaluation.
pub fn main_evaluation() -> (HypParams, Rational) {
    let p = HypParams::from_strs("7/48", "31/48", "9/8").expect("valid parameters");
    (p, "29884728384/34239431521".parse().expect("rational"))
}

/// Γ arguments spanning small, near-integer and large values.
pub fn gamma_arguments() -> Vec<Rational> {
    ["1/8", "5/8", "1/6", "7/3", "199/4"].iter().map(|s| s.parse().expect("rational")).collect()
}
