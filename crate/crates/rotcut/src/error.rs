use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// usage and degenerate-input problems exit 2, a failed verification exits 1,
/// and internal-consistency violations (which indicate a bug) exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate arrangement: {0}")]
    DegenerateArrangement(String),

    #[error("invalid edit: {0}")]
    InvalidEdit(String),

    #[error(
        "verification failed for color {color}: above={above}, on={on}, below={below}, cap={cap}"
    )]
    VerificationFailed {
        color: crate::geometry::Color,
        above: usize,
        on: usize,
        below: usize,
        cap: usize,
    },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
