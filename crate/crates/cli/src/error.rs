use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] spacer_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// Malformed solutions file; position is 1-based.
    #[error("{path}: parse error at line {line}, column 1: {message}")]
    Solutions {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 0 success, 2 parse, 3 unsupported gate, 4 capacity, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        use spacer_core::Error as E;
        match self {
            Self::Core(E::Parse { .. }) | Self::Solutions { .. } => 2,
            Self::Core(E::UnsupportedGate(_)) => 3,
            Self::Core(E::Capacity { .. }) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
