use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of supported range 1..={1}")]
    ExtDegree(usize, usize),
    #[error("characteristic {p} too small for degree {degree} (need p > degree)")]
    SmallCharacteristic { p: u64, degree: usize },
    #[error("division by zero in exact field")]
    DivisionByZero,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("duplicate points in interpolation input")]
    DuplicatePoints,
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("point {0} is not a singular point of the curve")]
    PointNotSingular(String),
    #[error("curve is not reduced (repeated component detected)")]
    NotReduced,
    #[error("singular point {point} is neither a node nor an ordinary cusp (quadratic part has rank {quad_rank})")]
    UnsupportedSingularity { point: String, quad_rank: usize },
    #[error("operation requires a prime field, got the rationals")]
    NeedsPrimeField,
    #[error("operation requires declared singular points over the rationals")]
    NeedsDeclaredPoints,
    #[error("singular point inventory is not complete enough for this operation")]
    IncompleteInventory,
    #[error("curves share a common component")]
    CommonComponent,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("prescribed-singularity system has no nonzero solution")]
    EmptySolutionSpace,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported field rebase: {0}")]
    Rebase(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
