use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{value} does not divide {modulus}")]
    NotADivisor { value: u64, modulus: u64 },

    #[error("{unit} is not a unit modulo {modulus}")]
    NotAUnit { unit: u64, modulus: u64 },

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("wrong number of coefficients: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },

    #[error("cyclic factor must be at least 1, got {0}")]
    BadFactor(u64),

    #[error("element {0:?} does not belong to the group")]
    NotInGroup(Vec<u64>),

    #[error("elements are not in the same group")]
    GroupMismatch,

    #[error("subgroup is not contained in the larger group")]
    NotASubgroup,

    #[error("invalid permutation: {0}")]
    BadPermutation(String),

    #[error("group closure exceeds the bound of {0} elements")]
    GroupTooLarge(usize),

    #[error("invalid action: {0}")]
    BadAction(String),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("invalid class: {0}")]
    BadClass(String),

    #[error("rank function must sum to {expected}, got {got}")]
    BadRankFunction { expected: u64, got: u64 },

    #[error("component is not a monomorphism")]
    NotMono,

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("no normal-basis family found for N = {modulus} within {tried} candidates")]
    SearchExhausted { modulus: u64, tried: usize },

    #[error("family is not Aut-invariant: {0}")]
    NotInvariant(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("not a Galois cover: {0}")]
    NotACover(String),
}

pub type Result<T> = std::result::Result<T, Error>;
