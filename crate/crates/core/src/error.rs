use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} {what}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("degenerate channel: combined gain is zero")]
    DegenerateChannel,

    #[error("channel realization must be {n_tx}x{n_rx}, got {actual} coefficients")]
    AntennaGrid {
        n_tx: usize,
        n_rx: usize,
        actual: usize,
    },

    #[error("noise plus interference power must be positive")]
    ZeroNoisePower,

    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
