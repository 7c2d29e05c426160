//! Rings with distinguished two-sided ideals.

mod adapter;
mod ideal;
mod poly;

pub use adapter::{FreeRing, IntRing, ModRing, Ring, RingAdapter, Triang, TriangRing};
pub use ideal::{
    free_member, ideal_member, sym_product, term_member, tree_level, BracketTree, Ideal, IdealSampler, IdealSpec,
    NamedSet, RingElement,
};
pub use poly::{product, Letter, Monomial, Poly, Tag};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {left} vs {right}")]
    Mismatch { left: RingAdapter, right: RingAdapter },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("unknown ring `{0}` (expected z, zmod:<m>, triang:<m> or free)")]
    UnknownRing(String),
    #[error("invalid ideal description `{0}`")]
    InvalidIdeal(String),
    #[error("malformed bracket tree `{0}`")]
    BadTree(String),
    #[error("bracket tree leaves {leaves:?} do not match {ideals} ideals")]
    TreeMismatch { leaves: Vec<usize>, ideals: usize },
}
