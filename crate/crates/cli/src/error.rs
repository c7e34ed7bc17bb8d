use projrigid::cohomology::CohomologyError;
use projrigid::lie::LieError;
use projrigid::{FieldError, LinalgError, PresentationError, RigidityError};
use thiserror::Error;

/// Failures of a command, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or schema-violating input; exit code 1.
    #[error("input error: {0}")]
    Input(String),
    /// Well-formed input on which the requested operation is undefined, such
    /// as an unsatisfied relator or a cochain that is not a cocycle; exit code 2.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::RelatorNotSatisfied { .. } | LieError::NotInvariant(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::Lie(inner) => inner.into(),
            CohomologyError::Length { .. } | CohomologyError::ModuleMismatch { .. } | CohomologyError::Linalg(_) => {
                CliError::Input(e.to_string())
            }
            CohomologyError::NotCocycle
            | CohomologyError::NotInvariant(_)
            | CohomologyError::IntertwinerFails { .. }
            | CohomologyError::NoPairingWitness => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<RigidityError> for CliError {
    fn from(e: RigidityError) -> Self {
        match e {
            RigidityError::Cohomology(inner) => inner.into(),
            RigidityError::CuspOutOfRange { .. } => CliError::Input(e.to_string()),
            RigidityError::InconsistentCusp { .. }
            | RigidityError::NotCoprime { .. }
            | RigidityError::NotRigid
            | RigidityError::SlopeNotFlexing { .. } => CliError::Precondition(e.to_string()),
        }
    }
}
