use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("a degree-{n} model has {expected} coefficients, got {got}")]
    CoefficientCount { n: u32, expected: usize, got: usize },
    #[error("unsupported model degree {0} (expected 2, 3 or 4)")]
    UnknownKind(u32),
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("transform acts on degree-{transform} models, model has degree {model}")]
    KindMismatch { transform: u32, model: u32 },
    #[error("transform matrix is singular or has the wrong size")]
    BadTransform,
    #[error("transformed model has non-integral coefficients")]
    NonIntegral,
    #[error("model is degenerate (discriminant 0)")]
    Degenerate,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("prime {0} is a bad prime for this operation")]
    BadPrime(u64),
    #[error("empty integer range for coefficient {0}")]
    EmptyRange(usize),
    #[error("flex elimination failed after {0} coordinate changes")]
    Elimination(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("corrupt record at line {line}: {reason}")]
    CorruptRecord { line: usize, reason: String },
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
