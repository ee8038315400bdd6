use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] holant_core::Error),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

impl LabError {
    /// Process exit status: 1 usage, 2 validation, 3 mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Usage(_) => 1,
            LabError::Parse { .. } | LabError::Io { .. } | LabError::Core(_) => 2,
            LabError::Mismatch(_) => 3,
        }
    }

    pub(crate) fn at(line: usize, msg: impl Into<String>) -> LabError {
        LabError::Parse { line, msg: msg.into() }
    }
}

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_string(),
        source,
    })
}
