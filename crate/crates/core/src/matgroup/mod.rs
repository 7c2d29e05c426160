//! Elementary transvections, words in them, and their evaluation.
//!
//! Words store transvections only. `z` and `y` generators are sugar that
//! expands on construction; inverses are negated arguments. All commutators
//! are left-normed: `[x, y] = x y x⁻¹ y⁻¹` and `ˣy = x y x⁻¹`.

mod generator;
mod matrix;
mod word;

pub use generator::{expand_factors, mirror_poly, Factor, Generator};
pub use matrix::Matrix;
pub use word::{commutator_word, conjugate_word, steinberg_commutator, GroupWord, Transvection};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid position ({i},{j}) for degree {n}")]
    BadPosition { i: usize, j: usize, n: usize },
    #[error("degree must be at least 2, got {0}")]
    BadDegree(usize),
    #[error("no closed form for the commutator of opposite positions ({i},{j}) and ({j},{i})")]
    NoClosedForm { i: usize, j: usize },
}
