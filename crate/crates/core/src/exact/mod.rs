//! Exact arithmetic over the rationals: numbers, univariate polynomials and
//! reduced rational functions. Everything here is immutable and pure.

mod poly;
mod ratfunc;
mod rational;

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;
