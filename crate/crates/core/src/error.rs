use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("expected a polynomial of degree at least {min}, got degree {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("degree {got} is outside the supported range {min}..={max}")]
    DegreeOutOfRange { got: usize, min: usize, max: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("leading coefficient is divisible by {0}")]
    LeadingCoefficientDivisible(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("defective Pade approximant at order {order} for series {series}")]
    DefectivePade { order: usize, series: String },
    #[error("{count} modular factors exceed the recombination limit of {limit}")]
    TooManyModularFactors { count: usize, limit: usize },
    #[error("no suitable prime found below {0}")]
    NoSuitablePrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{table} order {order}, stage {stage}: {message}")]
    Pipeline {
        table: String,
        order: usize,
        stage: &'static str,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
