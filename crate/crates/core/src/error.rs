use thiserror::Error;

/// Errors surfaced across the crate. Contract violations that indicate a bug
/// in the caller (mixing coefficient fields, shape mismatches in internal
/// products) panic instead; everything reachable from user input goes through
/// this type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("cokernel presentation has {rows} rows but ambient rank {ambient}")]
    AmbientRankMismatch { rows: usize, ambient: usize },

    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),

    #[error("first homology has no infinite cyclic quotient; no epimorphism to Z exists")]
    NoFreeAbelianQuotient,

    #[error("phi does not vanish on relator {index}")]
    PhiNotVanishing { index: usize },

    #[error("longitude has nonzero phi-value {0}; not the 0-framed curve")]
    NotZeroFramed(i64),

    #[error("time budget exhausted; results incomplete")]
    BudgetExhausted,

    #[error("determinant-ratio oracle unavailable: every candidate denominator vanishes")]
    OracleUnavailable,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
