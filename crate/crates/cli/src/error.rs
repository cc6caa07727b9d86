use std::path::PathBuf;

pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] invpoly::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: not a coefficient file: {source}", path.display())]
    BadInput {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::BadInput { .. } => EXIT_USAGE,
            CliError::Core(e) => core_exit_code(e),
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
        }
    }
}

pub fn core_exit_code(e: &invpoly::Error) -> i32 {
    use invpoly::Error::*;
    match e {
        Domain(_) | InvalidInput(_) => EXIT_USAGE,
        Resource { .. } => EXIT_RESOURCE,
        ParityViolation { .. } | Convergence(_) | Numerical(_) => EXIT_NUMERICAL,
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
