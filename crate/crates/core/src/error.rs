use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("size guard: dimension {size} exceeds the cap of {cap}")]
    SizeGuard { size: usize, cap: usize },

    #[error("bad support: {0}")]
    BadSupport(String),

    #[error("kappa = {kappa:.6} must be < 0.5")]
    KappaTooLarge { kappa: f64 },

    #[error("regime violation: {0}")]
    RegimeViolation(String),

    #[error("base matrix rows are not scaled-orthonormal: max |A A* - (n/k) I| = {deviation:.3e}")]
    BaseNotScaledOrthonormal { deviation: f64 },

    #[error("too many supports to enumerate: {count} > {cap}")]
    TooManySupports { count: u128, cap: u128 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("probe vector must have unit norm, got {norm}")]
    NotUnitNorm { norm: f64 },

    #[error("selected columns are numerically rank-deficient")]
    SingularSubproblem,

    #[error("net construction admitted no point")]
    BudgetExhaustedBeforeAnyPoint,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
