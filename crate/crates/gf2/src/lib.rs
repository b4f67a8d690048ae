//! Linear algebra over 𝔽₂.
//!
//! Two representations live side by side. [`BitVec`]/[`BitMatrix`] pack bits
//! into 64-bit words and are used for small operator matrices, while
//! [`SparseVec`]/[`SpMat`] store sorted index lists and back the large
//! boundary matrices that come out of simplicial constructions.

mod bitvec;
mod matrix;
mod reduce;
mod sparse;
mod subspace;

pub use bitvec::BitVec;
pub use matrix::BitMatrix;
pub use reduce::{ColumnReduction, Echelon};
pub use sparse::{SpMat, SparseVec};
pub use subspace::{quotient_reduce, QuotientPresentation, Subspace};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("vector does not lie in the ambient subspace")]
    NotInAmbient,
    #[error("modulus is not contained in the ambient subspace")]
    ModulusNotContained,
}
