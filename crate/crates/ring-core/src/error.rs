use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("variable index {index} out of range for {n} variables")]
    VarIndex { index: usize, n: usize },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an admissible prime")]
    NotPrime(u64),
    #[error("bad ring context: {0}")]
    BadContext(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
