use thiserror::Error;

use crate::geometry::SymplecticPoint;
use crate::pauli::PauliObservable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty observable word")]
    EmptyWord,

    #[error("invalid character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },

    #[error("{qubits} qubits requested, at most {max} are supported")]
    TooManyQubits { qubits: usize, max: usize },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("the identity has no point in the symplectic polar space")]
    IdentityPoint,

    #[error("bit pattern {bits:#x} does not fit in {qubits} qubits")]
    BitsOutOfRange { bits: u32, qubits: usize },

    #[error("a projective line needs two distinct points, got {0} twice")]
    CoincidentPoints(SymplecticPoint),

    #[error("empty input")]
    Empty,

    #[error("duplicate point {0}")]
    DuplicatePoint(SymplecticPoint),

    #[error("duplicate observable {0} in context")]
    DuplicateObservable(PauliObservable),

    #[error("observables {0} and {1} anticommute")]
    NonCommuting(PauliObservable, PauliObservable),

    #[error("context product is {0}, not plus or minus the identity")]
    ProductNotIdentity(PauliObservable),

    #[error("context declares sign {expected} but its product has sign {actual}")]
    SignMismatch {
        expected: crate::pauli::Sign,
        actual: crate::pauli::Sign,
    },

    #[error("universe of {size} points exceeds the exhaustive limit of {max}; use parity_witness")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("the pairwise intersections have no common point")]
    NoCommonPoint,

    #[error("the pairwise intersections share {0} points, not exactly one")]
    AmbiguousCommonPoint(usize),

    #[error("projecting observable {0} squares to minus the identity")]
    SignAmbiguousProjection(PauliObservable),

    #[error("expected a subspace of rank {expected}, got rank {actual}")]
    WrongRank { expected: usize, actual: usize },

    #[error("unsupported search: {0}")]
    UnsupportedSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
