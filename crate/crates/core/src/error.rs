use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square or rows have unequal length")]
    NotSquare,
    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("generator {0} is not invertible")]
    SingularGenerator(usize),
    #[error("generator index {index} out of range (have {count} generators)")]
    InvalidIndex { index: usize, count: usize },
    #[error("representations are not comparable: {0}")]
    IncompatibleReps(String),
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("closures are not isomorphic as labeled groups: {0}")]
    ClosureMismatch(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("search space of {candidates} candidates exceeds the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element index {0} out of range")]
    InvalidElement(usize),
    #[error("conjugacy class {class} (containing element {element}) is not hit by any place")]
    UncoverableClass { class: usize, element: usize },
    #[error("not a homomorphism: rho({0}*{1}) != rho({0})rho({1})")]
    NotHomomorphism(usize, usize),
    #[error("matrix for element {0} is not invertible modulo {1}")]
    NotInvertibleMod(usize, u64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
