use thiserror::Error;

/// Errors raised by the kernel.
///
/// Constraint violations found while validating a presentation or an
/// endomorphism are *not* errors; they are collected into reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("coefficient backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("invalid backend: {0}")]
    InvalidBackend(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("zero polynomial has no leading or smallest term")]
    ZeroPolynomial,
    #[error("operation is not defined for Laurent presentations")]
    LaurentUnsupported,
    #[error("presentation is not quasi-commutative")]
    NotQuasiCommutative,
    #[error("presentation is not bijective: {0}")]
    NotBijective(String),
    #[error("presentation has no Laurent variables")]
    NotLaurent,
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("unit logarithms are not supported: {0}")]
    UnitLogUnsupported(String),
    #[error("data is not of endomorphism type: {0}")]
    NotEndomorphismType(String),
    #[error("endomorphism has not been validated")]
    NotValidated,
    #[error("endomorphism is not filtered: {0}")]
    NotFiltered(String),
    #[error("scalar is not a unit: {0}")]
    NonUnitScalar(String),
    #[error("not a quantum space: {0}")]
    NotQuantumSpace(String),
    #[error("coefficient ring is not a domain: {0}")]
    NotADomain(String),
    #[error("multiparameters are not independent over the fraction field: {0}")]
    IndependenceFails(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
