use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("no primitive root of unity of order {0} in this field")]
    UnsupportedOrder(usize),
    #[error("interpolation abscissa {0} appears twice")]
    DuplicateAbscissa(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("requested order {requested} exceeds the {available} stored coefficients")]
    OrderExceedsData { requested: usize, available: usize },
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("randomized verification failed after {0} attempts")]
    RetriesExhausted(usize),
    #[error("matrix is singular at x = 0")]
    SingularAtZero,
    #[error("quotient by x^{0} is not polynomial")]
    NonPolynomialQuotient(usize),
    #[error("expected {expected} rows of degree <= {bound}, found {found}")]
    WrongRowCount {
        expected: usize,
        found: usize,
        bound: usize,
    },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("input is not generic: {0}")]
    GenericityFailure(String),
    #[error("matrix is singular")]
    SingularInput,
    #[error("fraction reconstruction failed: {0}")]
    ReconstructionFailure(String),
    #[error("input too large for brute-force oracle: {0}")]
    OracleTooLarge(String),
    #[error("degree cap {cap} too small, need at least {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
