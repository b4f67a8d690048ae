//! Cosimplicial simplicial 𝔽₂-modules: conormalized bicomplexes, their
//! spectral sequences, totalization, and the operations on homotopy orbits.

pub mod chains;
pub mod cosimplicial;
pub mod simplicial;
pub mod specseq;
pub mod totalization;
pub mod operations;
pub mod universal;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("subobject is not closed under the structure maps")]
    NotClosed,
    #[error("bidegree (-{p},{q}) is outside the exact window")]
    OutsideWindow { p: usize, q: usize },
    #[error("degree {0} is outside the valid range")]
    OutOfRange(usize),
    #[error("not an infinite cycle: {0}")]
    NotInfiniteCycle(String),
    #[error("{0}")]
    Inconsistent(String),
}
