use thiserror::Error;
use trimode_core::Error as CoreError;

/// Exit codes shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const INAPPLICABLE: i32 = 3;
    pub const NUMERIC: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => exit::INVALID,
            CliError::Core(e) => match e {
                CoreError::InvalidArgument(_) | CoreError::UnsupportedOperation(_) => exit::INVALID,
                CoreError::MethodInapplicable(_) => exit::INAPPLICABLE,
                CoreError::Domain(_) | CoreError::Accuracy { .. } => exit::NUMERIC,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
