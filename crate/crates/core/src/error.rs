use thiserror::Error;

use crate::geometry::Pos;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("even characteristic unsupported")]
    EvenCharacteristic,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("division by zero in F_q")]
    DivisionByZero,
    #[error("index {index} out of range 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("rank must be at least 1")]
    BadRank,
    #[error("type A carries no invariant form")]
    NoForm,
    #[error("unknown region name {0:?}")]
    UnknownRegion(String),
    #[error("position {0} is not in pUP")]
    NotInPup(Pos),
    #[error("set is not contained in pUP (offending position {0})")]
    NotSubsetOfPup(Pos),
    #[error("position {0} is not strictly above the diagonal")]
    NotAboveDiagonal(Pos),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,
    #[error("element is not a member of the requested group")]
    NotMember,
    #[error("{what} of size {size} exceeds the budget {limit}")]
    BudgetExceeded { what: &'static str, size: u128, limit: u128 },
    #[error("support leaves pKL")]
    SupportLeavesPkl,
    #[error("character is not staircase")]
    NotStaircase,
    #[error("place assignment is not total on the places (missing {0})")]
    PlacesIncomplete(Pos),
    #[error("place update is not affine in the root parameter at {0}")]
    NonAffinePlaceUpdate(Pos),
    #[error("function is not multiplicative on the subgroup")]
    NotMultiplicative,
    #[error("character has the wrong verge shape: {0}")]
    WrongVerge(String),
    #[error("invalid basic set: {0}")]
    InvalidBasicSet(String),
    #[error("elementary characters need a nonzero parameter")]
    ZeroParameter,
    #[error("inner product is not rational: {0}")]
    NonRational(String),
    #[error("value is not an integer: {0}")]
    NonIntegral(String),
    #[error("mixed primes {0} and {1} in cyclotomic arithmetic")]
    MixedPrime(u32, u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
