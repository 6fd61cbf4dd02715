use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{0}")]
    Core(#[from] kspec::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// 3 for resource guards, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(kspec::Error::Resource(_)) => 3,
            _ => 2,
        }
    }
}
