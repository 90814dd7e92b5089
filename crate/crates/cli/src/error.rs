use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("numerical failure: {0}")]
    Numerical(nonstatic::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Output(String),
}

impl CliError {
    /// 1 usage/config, 2 verification failure, 3 non-finite numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Output(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<nonstatic::Error> for CliError {
    fn from(e: nonstatic::Error) -> Self {
        use nonstatic::Error as E;
        match e {
            E::NonFinite { .. } | E::DegenerateFrame { .. } | E::LengthMismatch { .. } => CliError::Numerical(e),
            E::InvalidParameter { .. } | E::InvalidGrid(_) | E::Underspecified(_) => CliError::Config(e.to_string()),
        }
    }
}
