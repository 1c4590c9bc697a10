use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("braid word contains a negative letter")]
    NonPositiveInput,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),
    #[error("operation requires an open word")]
    ClosedWord,
    #[error("search budget of {0} words exhausted")]
    BudgetExhausted(usize),
    #[error("companion census must describe a single-component front (w+ = 1, w- = 0)")]
    MultiComponentCompanion,
    #[error("hypothesis not declared: {missing}")]
    HypothesisNotDeclared { missing: String },
    #[error("no closed-form maximal reltb for a non-positive braid pattern")]
    NonPositiveBraid,
    #[error("adjacent peak rotations {0} and {1} have odd difference")]
    ParityViolation(i64, i64),
    #[error("no class table for this pattern family")]
    UnsupportedFamily,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("m = {0} must be odd")]
    EvenM(i64),
    #[error("negative intermediate count {count} at (tb, rot) = ({t}, {r})")]
    NegativeCount { t: i64, r: i64, count: i64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
