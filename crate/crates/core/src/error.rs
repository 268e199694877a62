use thiserror::Error;

use crate::ring::RingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingId, right: RingId },

    #[error("expected a value over {expected}, found {found}")]
    WrongRing { expected: String, found: RingId },

    #[error("unknown token {token:?} at position {position} for ring {ring}")]
    Token {
        token: String,
        position: usize,
        ring: RingId,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("composition {0} is not a valid path to F2")]
    BadGrayPath(String),

    #[error("code is not self-dual")]
    NotSelfDual,

    #[error("bad X: <X,X> = {found}, required {required}")]
    BadExtensionVector { required: String, found: String },

    #[error("c is not a unit with c^2 = 1 (c = {0})")]
    BadUnit(String),

    #[error("generator is not of the systematic form [I | A]")]
    NotSystematic,

    #[error("code has no four-circulant provenance")]
    NotFourCirculant,

    #[error("dimension {k} exceeds the full-scan bound {bound}; use the low-weight census")]
    ScanBound { k: usize, bound: usize },

    #[error("all-zero generator")]
    ZeroCode,

    #[error("odd length {0}")]
    OddLength(usize),

    #[error("weight census is not complete through weight {0}")]
    IncompleteCensus(usize),

    #[error("{line}:{column}: {message}")]
    Spec {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} is projected to take {projected}; rerun with --deep")]
    NeedsDeep { what: String, projected: String },

    #[error("unresolved code reference {0:?}")]
    Unresolved(String),

    #[error("invalid data: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
