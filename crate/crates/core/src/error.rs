use thiserror::Error;

use crate::exactmath::MathError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for errors caused by user input rather than the program.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match e.classify() {
            Category::Io => Error::Io(e.into()),
            // Schema violations reach here as `data` errors; keep position info for both.
            _ => Error::Json {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
