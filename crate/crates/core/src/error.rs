use num_bigint::BigInt;
use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NotPositive(BigInt),

    #[error("{value} is not square-free: divisible by {factor}^2")]
    NotSquarefree { value: BigInt, factor: BigInt },

    #[error("m = {0} is even; the family is defined for odd m only")]
    EvenParameter(BigInt),

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("{0} is a perfect square")]
    PerfectSquare(BigInt),

    #[error("{0} is not a valid discriminant (must be positive, non-square, and 0 or 1 mod 4)")]
    InvalidDiscriminant(BigInt),

    #[error("periodic Bernoulli index {0} is outside {{1, 2, 3}}")]
    BernoulliIndex(u32),

    #[error("Dedekind sum index r = {0} is outside {{2, 3}}")]
    DedekindIndex(u32),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("operands belong to different fields (D = {0} and D = {1})")]
    FieldMismatch(BigInt, BigInt),

    #[error("unit matrix is not integral: {0}")]
    NonIntegralMatrix(String),

    #[error("unit matrix has c = 0")]
    DegenerateMatrix,

    #[error("surd (a + b*sqrt(D))/c needs b != 0 and c != 0")]
    DegenerateSurd,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
