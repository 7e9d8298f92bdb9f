use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational {0:?}")]
    Rational(String),
    #[error("malformed integer {0:?}")]
    Integer(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("polynomial needs nonzero constant and leading coefficients")]
    ZeroEndpoint,
    #[error("polynomial degree must be at least one")]
    ZeroDegree,
    #[error("coefficient {0} is not in Z[1/p]")]
    NotInAp(String),
    #[error("the constant coefficient a_n must be nonzero")]
    VanishingConstant,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("base is not usable: {0}")]
    UnsupportedBase(String),
    #[error("element is not a p-adic integer (valuation {0}); scale it first")]
    NotPAdicInteger(i64),
    #[error("valuation precondition of the construction violated: {0}")]
    Precondition(String),
    #[error("integer overflow in shift radix iteration")]
    Overflow,
    #[error("invalid window: lo {lo} > hi {hi}")]
    Window { lo: i64, hi: i64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
