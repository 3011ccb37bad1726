use ainfinity::AInfError;
use hochschild::HochschildError;
use mf_core::MfError;
use ring_core::RingError;
use stabilize::StabilizeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Stabilization(String),
}

impl CliError {
    /// 0 ok, 2 parse, 3 precondition, 4 verification failure, 5 stabilization cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Stabilization(_) => 5,
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Parse { .. } | RingError::BadContext(_) | RingError::NotPrime(_) => CliError::Parse(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<MfError> for CliError {
    fn from(e: MfError) -> Self {
        match e {
            MfError::Ring(r) => r.into(),
            MfError::Stabilization { .. } => CliError::Stabilization(e.to_string()),
            MfError::NotFactorization(_) => CliError::Verification(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<StabilizeError> for CliError {
    fn from(e: StabilizeError) -> Self {
        match e {
            StabilizeError::Mf(m) => m.into(),
            StabilizeError::Ring(r) => r.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<AInfError> for CliError {
    fn from(e: AInfError) -> Self {
        match e {
            AInfError::Ring(r) => r.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<HochschildError> for CliError {
    fn from(e: HochschildError) -> Self {
        match e {
            HochschildError::Ring(r) => r.into(),
            HochschildError::Mf(m) => m.into(),
            HochschildError::Stabilize(s) => s.into(),
            HochschildError::NotIsolated { .. } => CliError::Stabilization(e.to_string()),
            HochschildError::Inconsistent(_) => CliError::Verification(e.to_string()),
            HochschildError::NotInSquare(_) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
