use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("containment violation: {0}")]
    Containment(String),
    #[error("unbalanced partition")]
    Unbalanced,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("series order {have} insufficient, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("not quasimodular at this weight: residual at q^{residual}")]
    FitFailed { residual: usize },
    #[error("certified tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailBound { bound: f64, tol: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}
