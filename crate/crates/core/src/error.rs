use thiserror::Error;

use crate::catalog::ModeWindow;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("operator is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("mode window {lo}..{hi} is empty")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("window {window} must be symmetric about 0")]
    AsymmetricWindow { window: ModeWindow },

    #[error("mode {mode} outside window {window}; required window {required}")]
    WindowOverflow {
        mode: i64,
        window: ModeWindow,
        required: ModeWindow,
    },

    #[error("unknown model kind `{0}`")]
    UnknownKind(String),

    #[error("dimension {dim} exceeds size cap {cap}")]
    SizeCap { dim: usize, cap: usize },

    #[error("quotient map does not respect the kernel (residual {residual:.3e})")]
    KernelViolation { residual: f64 },

    #[error("unitary does not commute with T (commutant residual {residual:.3e})")]
    NotInCommutant { residual: f64 },

    #[error("family is not orthonormal (residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("gamma = {0} outside [0, 1]")]
    GammaOutOfRange(String),

    #[error("{what} requires at most {cap}, got {got}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },

    #[error("no k in 1..={cap} with shift^k(W)·W = 0 for W = {word}")]
    NoNilpotenceWitness { word: String, cap: u64 },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
