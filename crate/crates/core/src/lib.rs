//! Executable commutator calculus for elementary subgroups of `GL(n, R)`.
//!
//! Words in elementary transvections are evaluated over the free ring, where
//! equality of two words is a universal identity, and over small concrete
//! rings for randomized confidence checks. On top of that sit the explicit
//! factorization identities for elementary commutators and conjugates, and
//! rewriting procedures that emit re-checkable certificates.

pub mod generate;
pub mod identities;
pub mod matgroup;
pub mod ring;
pub mod syntax;
pub mod verify;
