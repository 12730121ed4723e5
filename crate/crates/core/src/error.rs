use thiserror::Error;

use crate::linalg::LinalgError;
use crate::module::BasisKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("verma cutoff must be at least {min}, got {got}")]
    CutoffTooSmall { min: usize, got: usize },
    #[error("operation requires the v basis, got the {0} basis")]
    WrongBasis(BasisKind),
    #[error("parameters are not in the irreducible locus at d = {d}: {detail}; use oracle mode")]
    Reducible { d: u32, detail: String },
    #[error("identification needs a nonempty module")]
    EmptyModule,
    #[error("criterion and oracle disagree: {0}")]
    OracleDisagreement(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("rewrite limit of {0} steps exceeded")]
    RewriteLimit(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
