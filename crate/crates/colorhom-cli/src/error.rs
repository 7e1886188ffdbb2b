use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Line and column are 1-based; 0 means the location is not known.
    #[error("{path}:{line}:{col}: {msg}")]
    Parse { path: String, line: usize, col: usize, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] colorhom::Error),
}

impl CliError {
    /// 1 for mathematical refusals, 2 for usage, budget, I/O and parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(colorhom::Error::BudgetExceeded { .. }) => 2,
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}
