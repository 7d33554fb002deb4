use thiserror::Error;

/// Errors raised by the exact, numeric and symbolic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("cannot parse decimal {0:?}")]
    ParseDecimal(String),
    #[error("degenerate composition: denominator vanishes identically")]
    DegenerateComposition,
    #[error("pole at {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divisor interval contains zero")]
    PossiblyZeroDivisor,
    #[error("series did not converge within {0} terms")]
    TermCap(usize),
    #[error("quadrature did not converge by level {level} (last difference {diff})")]
    QuadratureNonConvergence { level: u32, diff: String },
    #[error("no feasible evaluation strategy: {0}")]
    NoStrategy(String),
    #[error("evaluation strategies disagree: {0}")]
    StrategyMismatch(String),
    #[error("rule {rule} does not apply: {reason}")]
    RuleConstraint { rule: String, reason: String },
    #[error("rewrite refused: {0}")]
    RewriteRefused(String),
    #[error("invalid expression: {0}")]
    InvalidExpr(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("derivation mismatch: {0}")]
    Derivation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
