use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] koszul_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 when a resource budget is exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(koszul_core::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}
