use mf_core::MfError;
use ring_core::RingError;
use stabilize::StabilizeError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Stabilize(#[from] StabilizeError),
    #[error("potential {0} is not in the square of the maximal ideal")]
    NotInSquare(String),
    #[error("no stabilization up to N = {cap}: likely not an isolated singularity (or the cap is too low)")]
    NotIsolated { cap: u32 },
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

impl HochschildError {
    /// Maps a stabilization failure of the cohomology engine to `NotIsolated`.
    pub(crate) fn lift(e: MfError) -> Self {
        match e {
            MfError::Stabilization { cap } => HochschildError::NotIsolated { cap },
            e => HochschildError::Mf(e),
        }
    }
}
