use qwalk_core::WalkError;

#[derive(Debug)]
pub enum CliError {
    /// exit 2
    Param(String),
    /// exit 3
    Tolerance(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => 2,
            CliError::Tolerance(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Param(m) => write!(f, "invalid parameters: {m}"),
            CliError::Tolerance(m) => write!(f, "tolerance check failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::InvalidParameter(_)
            | WalkError::DimensionMismatch { .. }
            | WalkError::LabelMismatch
            | WalkError::Overflow(_)
            | WalkError::OutsideCone
            | WalkError::Degenerate(_) => CliError::Param(e.to_string()),
            other => CliError::Tolerance(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Exit 3 unless `ok`.
pub fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Tolerance(what()))
    }
}
