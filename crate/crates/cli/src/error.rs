use thiserror::Error;

/// CLI failure. `Display` is the single-line diagnostic printed to stderr.
#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("error[config]: {0}")]
    Config(String),
    #[error("error[io]: {0}")]
    Io(String),
    #[error("error[usage]: {0}")]
    Usage(String),
}

fn one_line(msg: impl Into<String>) -> String {
    msg.into().split_whitespace().collect::<Vec<_>>().join(" ")
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(one_line(msg))
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError::Io(one_line(msg))
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(one_line(msg))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<coexsim_core::Error> for CliError {
    fn from(e: coexsim_core::Error) -> Self {
        CliError::config(e.to_string())
    }
}
