use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("not a toric Kato matrix: {0}")]
    InvalidKatoMatrix(String),
    #[error("invalid Kato data: {0}")]
    InvalidKatoData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("regularization exceeded {0} subdivision steps")]
    RegularizationCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
