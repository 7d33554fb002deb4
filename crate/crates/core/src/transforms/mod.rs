//! ₂F₁ transformations as exact rewrites of [`HypTerm`]s, Gosper's
//! ¼-identity with its integral proof steps, and the degree-12 chain that
//! yields ₂F₁(7/48, 31/48; 9/8; (172872/185039)²).

mod chain;
mod check;
mod gosper;
mod identities;
mod rules;
mod term;

pub use chain::{derive_main, main_chain_rules, printed_argument, printed_main_rhs, DerivationTrace, TraceStep};
pub use check::{agreement_digits, StepCheck};
pub use gosper::{gosper_params, gosper_rhs, verify_gosper_identity, verify_gosper_proof};
pub use identities::{
    conclusion_corrected_rhs, conclusion_printed_rhs, verify_conclusion, verify_zj_split, ConclusionCheck,
};
pub use rules::{apply_rule, rule_soundness, Affine, Param, Pivot, SoundnessSample, TransformRule};
pub use term::HypTerm;
