//! CLI error kinds carrying their exit codes: 2 for failed checks or broken
//! invariants, 3 for parse problems, 4 for cap overruns.

use cdlab::CdError;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Cap(String),
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Cap(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CdError> for CliError {
    fn from(e: CdError) -> Self {
        match e {
            CdError::ElementCapExceeded { .. }
            | CdError::FamilyCapExceeded { .. }
            | CdError::OracleCapExceeded { .. }
            | CdError::CapExceeded(_) => CliError::Cap(e.to_string()),
            CdError::InvariantViolation(_) => CliError::Check(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(format!("io: {e}"))
    }
}
