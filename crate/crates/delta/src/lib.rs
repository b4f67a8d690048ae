//! The simplex category's operator calculus.
//!
//! Monotone maps `[p] → [q]`, coface/codegeneracy words, shuffles stored as
//! permutations, and the two shuffle bijections used to compare the chain
//! composites for tensor products and for comodule structures.

mod monotone;
mod shuffle;
mod words;

pub use monotone::{compose, MonotoneMap, Op};
pub use shuffle::{
    binomial, enumerate_shuffles, eta, eta_inverse, eta_restricted, eta_restricted_inverse,
    restricted_domain, shuffle_split, Shuffle,
};
pub use words::{
    comodule_identities, nabla_words, restricted_front_map, tensor_identities, word_of_degeneracies, WordIdentity,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("values are not a monotone map into [{target}]: {values:?}")]
    NotMonotone { values: Vec<usize>, target: usize },
    #[error("cannot compose [{a}]→[{b}] with a map out of [{c}]")]
    Endpoints { a: usize, b: usize, c: usize },
    #[error("operator {op:?} cannot act on [{n}]")]
    BadOperator { op: Op, n: usize },
    #[error("not a ({p},{q})-shuffle: {perm:?}")]
    NotShuffle { p: usize, q: usize, perm: Vec<usize> },
    #[error("cut position {z} outside (0, {total})")]
    CutOutOfRange { z: usize, total: usize },
    #[error("restriction {r} exceeds {p}")]
    RestrictionTooLarge { r: usize, p: usize },
    #[error("shuffle does not satisfy the restriction")]
    OutsideRestriction,
}
