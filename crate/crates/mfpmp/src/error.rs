use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Numerical hard failures (CFL violations, bracket
/// failures) are kept distinct from plain validation errors so the CLI can
/// map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("exact transport size cap exceeded: {0}")]
    SizeCapExceeded(String),

    #[error("CFL condition violated: Courant number {courant:.4} exceeds {limit} ({context})")]
    CflViolation {
        courant: f64,
        limit: f64,
        context: String,
    },

    #[error("no bracketed root in [{lo}, {hi}]: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}")]
    NoBracketedRoot {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("layer solve did not reach tolerance {tol:.2e}: residual {residual:.2e} after {sweeps} sweeps")]
    LayerSolveStalled {
        tol: f64,
        residual: f64,
        sweeps: usize,
    },

    #[error("query outside grid box: {0}")]
    OutOfBox(String),

    #[error("grid too small for advected support: {0}")]
    GridTooSmall(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerics themselves (exit code 3 in the CLI),
    /// as opposed to bad inputs (exit code 2).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::CflViolation { .. }
                | Error::NoBracketedRoot { .. }
                | Error::LayerSolveStalled { .. }
                | Error::GridTooSmall(_)
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
