use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),
    /// Text-format parse failure with a 1-based line number.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The operation is defined but not supported for this kind of input.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Attaches a line number to an error raised while parsing one line.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Input(msg) | Error::Unsupported(msg) => Error::Parse { line, msg },
            e @ Error::Parse { .. } => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
