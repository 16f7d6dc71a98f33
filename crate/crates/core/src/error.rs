use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine can report. Each variant has a stable code
/// (see [`Error::code`]) that the command-line front end prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("no value assigned to variable {0}")]
    UnassignedVariable(String),

    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },

    #[error("generator x{index} is out of range for s = {count}")]
    UnknownGenerator { index: usize, count: usize },

    #[error("operands have different generator counts ({left} vs {right})")]
    GeneratorMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("characteristic {characteristic} is too small: {reason}")]
    CharacteristicTooSmall { characteristic: u64, reason: String },

    #[error("inputs do not commute")]
    NotCommuting,

    #[error("variable {0} is not covered by the Poisson tensor")]
    UnknownVariable(String),

    #[error("invalid Poisson tensor: {0}")]
    InvalidTensor(String),

    #[error("repeated eigenvalue at positions {0} and {1}")]
    RepeatedEigenvalue(usize, usize),

    #[error("right-hand side has a nonzero diagonal entry at position {0}")]
    NonzeroDiagonalRhs(usize),

    #[error("leading coefficient matrix is not diagonal")]
    NotDiagonalLeadingTerm,

    #[error("input is a scalar; its centralizer is the whole algebra")]
    ScalarInput,

    #[error("degree bound {bound} is below the input degree {degree}")]
    DegreeBoundTooSmall { bound: usize, degree: usize },

    #[error("invalid truncation order: {0}")]
    InvalidOrder(String),

    #[error("self-check failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "E001_FIELD_MISMATCH",
            Error::DivisionByZero => "E002_DIVISION_BY_ZERO",
            Error::NotPrime(_) => "E003_NOT_PRIME",
            Error::UnassignedVariable(_) => "E004_UNASSIGNED_VARIABLE",
            Error::SyntaxError { .. } => "E005_SYNTAX",
            Error::UnknownGenerator { .. } => "E006_UNKNOWN_GENERATOR",
            Error::GeneratorMismatch { .. } => "E007_GENERATOR_MISMATCH",
            Error::ShapeMismatch(_) => "E008_SHAPE_MISMATCH",
            Error::InvalidSize(_) => "E009_INVALID_SIZE",
            Error::CharacteristicTooSmall { .. } => "E010_CHARACTERISTIC_TOO_SMALL",
            Error::NotCommuting => "E011_NOT_COMMUTING",
            Error::UnknownVariable(_) => "E012_UNKNOWN_VARIABLE",
            Error::InvalidTensor(_) => "E013_INVALID_TENSOR",
            Error::RepeatedEigenvalue(..) => "E014_REPEATED_EIGENVALUE",
            Error::NonzeroDiagonalRhs(_) => "E015_NONZERO_DIAGONAL_RHS",
            Error::NotDiagonalLeadingTerm => "E016_NOT_DIAGONAL_LEADING_TERM",
            Error::ScalarInput => "E017_SCALAR_INPUT",
            Error::DegreeBoundTooSmall { .. } => "E018_DEGREE_BOUND_TOO_SMALL",
            Error::InvalidOrder(_) => "E019_INVALID_ORDER",
            Error::VerificationFailed(_) => "E020_VERIFICATION_FAILED",
        }
    }

    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::SyntaxError {
            position,
            message: message.into(),
        }
    }
}
