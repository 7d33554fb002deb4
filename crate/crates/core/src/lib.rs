//! Exact and rigorously bounded machinery for Gauss hypergeometric series.
//!
//! The crate is layered bottom-up:
//!
//! - [`exact`]: rationals, polynomials and rational functions over ℚ.
//! - [`mpreal`]: arbitrary-precision reals carrying an absolute error bound,
//!   elementary functions, Γ, Beta and tanh-sinh quadrature.
//! - [`hyper`]: ₂F₁ by series, exact termination, or the Euler integral.
//! - [`gammaexpr`]: symbolic products of Γ-values, π-powers and surds.
//! - [`transforms`]: ₂F₁ transformation rules as exact rewrites, the Gosper
//!   ¼-identity with its integral proof steps, and the degree-12 chain.
//! - [`catalog`]: the identity catalog and its verification runner.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod gammaexpr;
pub mod hyper;
pub mod mpreal;
pub mod transforms;

pub use error::{Error, Result};
pub use exact::{Poly, RatFunc, Rational};
pub use gammaexpr::{GammaExpr, Verdict};
pub use hyper::HypParams;
pub use mpreal::{BigReal, Precision};
