//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    InvalidDegree,

    #[error("field with {elements} elements exceeds the configured maximum of {max}")]
    FieldTooLarge { elements: u128, max: u64 },

    #[error("projective dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{e} does not divide the extension degree {d}")]
    NotASubfield { e: u32, d: u32 },

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("duplicate residue {0} in element set")]
    DuplicateElement(u64),

    #[error(
        "not a difference set: difference {alpha} is hit by {count} pairs, expected {expected}"
    )]
    NotADifferenceSet {
        alpha: u64,
        count: u64,
        expected: u64,
    },

    #[error("{t} is not a unit modulo {modulus}")]
    NotAUnit { t: u64, modulus: u64 },

    #[error("set is not fixed under multiplication by {multiplier} mod {modulus}: element {element} maps outside")]
    NotFrobeniusFixed {
        multiplier: u64,
        modulus: u64,
        element: u64,
    },

    #[error("group order {f} does not divide the set size {q}")]
    FNotDividingQ { f: u64, q: u64 },

    #[error("orbit of {element} has length {len}, expected {expected}")]
    OrbitLength {
        element: u64,
        len: u64,
        expected: u64,
    },

    #[error("search budget of {budget} nodes exhausted; result is inconclusive")]
    BudgetExhausted { budget: u64 },

    #[error("dessin with {edges} edges exceeds the size guard of {max}; raise the limit to build it anyway")]
    SizeGuard { edges: u64, max: u64 },

    #[error("ordering is not a permutation of the difference set")]
    NotAPermutation,

    #[error("ordering must contain at least two elements")]
    DegenerateOrdering,

    #[error("vertex map is not a bijection of the residues")]
    NotABijection,

    #[error("map x -> {multiplier}*x mod {modulus} is not an automorphism of the dessin")]
    NotAnAutomorphism { multiplier: u64, modulus: u64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
