use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("identity requires primitive polynomial (content is {0})")]
    NotPrimitive(String),

    #[error("not a knot polynomial; Fox formula normalization fails (value at 1 is {0})")]
    NotKnotPolynomial(String),

    #[error("leading coefficient {0} has a cofactor beyond trial-division range")]
    FactorizationLimit(String),

    #[error("polynomial has degree 0; it has no roots")]
    NoRoots,

    #[error("could not separate roots at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },

    #[error("Mahler measure methods disagree: roots give {roots}, Graeffe gives {graeffe}")]
    MethodDisagreement { roots: String, graeffe: String },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("invalid window {lo}:{hi} for a sequence of length {len}")]
    InvalidWindow { lo: usize, hi: usize, len: usize },

    #[error("window dominated by infinite homology ({nonzero} finite orders, need at least {needed})")]
    SparseWindow { nonzero: usize, needed: usize },

    #[error("r_max {r_max} exceeds the cap of {cap}; orders grow exponentially in r")]
    RangeCap { r_max: usize, cap: usize },

    #[error("r must be at least 1")]
    ZeroCoverDegree,

    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
