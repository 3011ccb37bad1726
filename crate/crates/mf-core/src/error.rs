use ring_core::RingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("potential mismatch: {0} vs {1}")]
    PotentialMismatch(String, String),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("not a matrix factorization: {0}")]
    NotFactorization(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("reduction modulo the maximal ideal is not a complex")]
    NotAComplex,
    #[error("no stabilization up to N = {cap} (non-isolated singularity or cap too low)")]
    Stabilization { cap: u32 },
}
