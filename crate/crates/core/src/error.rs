use thiserror::Error;

/// Errors distinguish malformed input from blown enumeration budgets; the CLI
/// maps them to exit codes 2 and 3 respectively.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::Cap(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
