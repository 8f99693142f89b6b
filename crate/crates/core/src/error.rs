use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("identity `{identity}` failed for inputs {inputs}")]
    IdentityFailed { identity: &'static str, inputs: String },

    #[error("precondition violated at witness {witness:?}: {reason}")]
    Precondition { reason: String, witness: Vec<f64> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
