use thiserror::Error;

/// Errors raised by the subfield pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad prime {0}: leading coefficient or discriminant vanishes modulo p")]
    BadPrime(u64),
    #[error("input factorization is not squarefree modulo p")]
    NotSquarefree,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("recombination budget exceeded ({0} subsets)")]
    RecombinationBudget(u64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("precision ceiling exceeded: {0}")]
    PrecisionCeiling(String),
    #[error("no linear-factor prime found within a budget of {0} primes")]
    NoLinearPrime(usize),
    #[error("block invariant degenerate for every shift up to {0}")]
    DegenerateInvariant(i64),
    #[error("reconstruction out of range: {0}")]
    Reconstruction(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reducible input: {0}")]
    Reducible(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("values do not separate into {0} equal classes")]
    Indistinct(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{cause}; partial table: {table}")]
    Aborted { cause: Box<Error>, table: String },
}

impl Error {
    /// The underlying error, looking through [`Error::Aborted`].
    pub fn root(&self) -> &Error {
        match self {
            Error::Aborted { cause, .. } => cause.root(),
            e => e,
        }
    }

    /// Budget and precision exhaustion, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self.root(),
            Error::Budget(_) | Error::PrecisionCeiling(_) | Error::RecombinationBudget(_) | Error::NoLinearPrime(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
