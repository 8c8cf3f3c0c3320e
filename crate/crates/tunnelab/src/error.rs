//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("momentum window too small: |T(p)-1| = {edge_value:.3e} at the window edge, required < {required:.3e}")]
    WindowTooSmall { edge_value: f64, required: f64 },

    #[error("quadrature did not converge: refinement change {change:.3e} exceeds tolerance {tol:.3e}")]
    QuadratureNotConverged { change: f64, tol: f64 },

    #[error("finite difference order {0} unsupported (max 4)")]
    UnsupportedOrder(usize),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("grid too short: shifted envelope copies fall off the grid ({0})")]
    GridTooShort(String),

    #[error("post-selection overlap vanishes: |integral of eta| = {0:.3e}")]
    EmptyOverlap(f64),

    #[error("envelope has no strict interior maximum")]
    NoInteriorPeak,

    #[error("scaled amplitude too large to convert to f64 (log magnitude {0:.3e})")]
    ScaleOverflow(f64),

    #[error("tau grid cannot resolve the requested V window (Nyquist violation: dtau*V_span = {0:.3e} > 2*pi)")]
    NyquistViolation(f64),

    #[error("config parse error at line {line}: {reason}")]
    ConfigParse { line: usize, reason: String },

    #[error("unknown config key `{key}` in section [{section}] at line {line}")]
    UnknownKey {
        key: String,
        section: String,
        line: usize,
    },

    #[error("config field `{field}` invalid: {reason}")]
    ConfigInvalid { field: String, reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
