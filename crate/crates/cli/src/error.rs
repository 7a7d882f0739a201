use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] vdwshock_core::Error),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv failure: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0} verification check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    /// 2 for anything the caller can fix by changing inputs, 3 when the
    /// numerics contradict themselves.
    pub fn exit_code(&self) -> i32 {
        use vdwshock_core::Error as E;
        match self {
            CliError::Core(E::Inconsistent(_) | E::RootMismatch { .. })
            | CliError::ChecksFailed(_) => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Core(_) => "numerics",
            CliError::Io(_) | CliError::Csv(_) => "io",
            CliError::ChecksFailed(_) => "verification",
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
