use ring_core::RingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AInfError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("potential {0} is not in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("potential {0} is not in the square of the maximal ideal")]
    NotInSquare(String),
    #[error("potential {0} is not a diagonal quadratic form")]
    NotQuadratic(String),
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,
    #[error("arity {got} outside the computed range 1..={max}")]
    Arity { got: usize, max: usize },
    #[error("basis index {index} out of range for a basis of {size}")]
    BasisIndex { index: usize, size: usize },
}
