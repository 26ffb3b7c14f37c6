use thiserror::Error;

/// Failures that stop a run before a report can be produced. All map to
/// exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("invalid spec: {0}")]
    Spec(String),

    #[error("{0}")]
    Core(#[from] biham_core::Error),

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },

    #[error("{0}")]
    Threads(String),
}

impl CliError {
    pub fn spec(msg: impl Into<String>) -> Self {
        Self::Spec(msg.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.line() == 0 {
            Self::Spec(e.to_string())
        } else {
            let mut message = e.to_string();
            if let Some(at) = message.rfind(" at line ") {
                message.truncate(at);
            }
            Self::Json { line: e.line(), column: e.column(), message }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
