use mf_core::MfError;
use ring_core::RingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizeError {
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("witness identity fails: sum f_i w_i = {got}, expected {expected}")]
    WitnessMismatch { got: String, expected: String },
    #[error("a Koszul datum needs at least one generator and as many witnesses")]
    BadLength,
    #[error("potential {0} has a nonzero constant term")]
    NotInMaximalIdeal(String),
    #[error("potential {0} must lie in the square of the maximal ideal and be nonzero")]
    NotInSquare(String),
}
