//! Real N-qubit Pauli observables in binary symplectic form, the geometry of
//! the symplectic polar space W(2N-1, 2), and a verifier, constructor and
//! search engine for Bell-Kochen-Specker "magic" configurations.
//!
//! ```
//! use bks_geometry::{catalog, magic};
//!
//! let rectangle = catalog::hc_rectangle();
//! let cert = magic::parity_witness(&rectangle).unwrap();
//! assert!(cert.certified());
//! assert!(!cert.nchv_assignment_exists);
//! ```

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod magic;
pub mod pauli;
pub mod search;

pub use classify::{classify_set, is_cap, projective_closure, ClassificationLabel, GeometryKind};
pub use error::{Error, Result};
pub use geometry::{SymplecticPoint, Subspace};
pub use magic::{Context, ContradictionCertificate, MagicConfiguration};
pub use pauli::{product_of_set, PauliObservable, Sign};
