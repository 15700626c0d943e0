use std::fmt;

/// Which triangle of a matrix may hold nonzero entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Upper,
    Lower,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Upper => Orientation::Lower,
            Orientation::Lower => Orientation::Upper,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Upper => f.write_str("upper"),
            Orientation::Lower => f.write_str("lower"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element is not invertible")]
    NotInvertible,
    #[error("GF({p}) is too small: the construction needs at least {needed} elements")]
    FieldTooSmall { p: u64, needed: usize },
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("no {n} nonzero elements of GF(2) sum to zero")]
    NoZeroSum { n: usize },
    #[error("ring is commutative, so every scalar commutator vanishes")]
    CommutativeRing,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular (rank {rank} of {n})")]
    Singular { rank: usize, n: usize },
    #[error("matrix is invertible; a singular matrix is required")]
    NotSingular,
    #[error("matrix does not have zero diagonal")]
    NotZeroDiagonal,
    #[error("matrix is not {0} triangular")]
    NotTriangular(Orientation),
    #[error("triangular matrix has nonzero trace")]
    TraceNonzero,
    #[error("size {n} is below the minimum {min} for this construction")]
    Size { n: usize, min: usize },
    #[error("matrix is central")]
    Central,
    #[error("minimal polynomial has degree {degree}, but degree at least 3 is required")]
    DegreeTooLow { degree: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: {0}")]
    Scale(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotInvertible => "E_NOT_INVERTIBLE",
            Error::FieldTooSmall { .. } => "E_FIELD_TOO_SMALL",
            Error::UnsupportedRing(_) => "E_UNSUPPORTED_RING",
            Error::NoZeroSum { .. } => "E_NO_ZERO_SUM",
            Error::CommutativeRing => "E_COMMUTATIVE_RING",
            Error::Shape(_) => "E_SHAPE",
            Error::Singular { .. } => "E_SINGULAR",
            Error::NotSingular => "E_NOT_SINGULAR",
            Error::NotZeroDiagonal => "E_NOT_ZERO_DIAG",
            Error::NotTriangular(_) => "E_NOT_TRIANGULAR",
            Error::TraceNonzero => "E_TRACE_NONZERO",
            Error::Size { .. } => "E_SIZE",
            Error::Central => "E_CENTRAL",
            Error::DegreeTooLow { .. } => "E_DEGREE_TOO_LOW",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Scale(_) => "E_SCALE",
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::Parse(_) => "E_PARSE",
            Error::RingMismatch => "E_RING_MISMATCH",
            Error::Internal(_) => "E_INTERNAL",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
