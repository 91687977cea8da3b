use thiserror::Error;

/// Errors raised by the algebra toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composite modulus: {0} is not prime")]
    CompositeModulus(u64),
    #[error("modulus {0} is out of the supported range")]
    ModulusOutOfRange(u64),
    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("wrong shape: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("table violates the Leibniz identity at basis triple ({0}, {1}, {2})")]
    NotLeibniz(usize, usize, usize),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not abelian")]
    NotAbelian,
    #[error("operation needs a prime field; enumeration over Q is impossible")]
    RationalsUnsupported,
    #[error("characteristic 2 is not supported by the classification")]
    CharacteristicTwo,
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("a witness is required over Q: {0}")]
    WitnessRequired(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
