//! Explicit family constructions. Each one emits a `SetFamily` that the
//! predicates in `family` can certify independently; randomized builders
//! take an explicit seed and produce bit-identical output for identical
//! inputs.

mod algebraic;
mod hk;
mod packing;
mod rpartite;
mod tolhuizen;

pub use algebraic::{construct_algebraic, AlgebraicCode};
pub use hk::{construct_hk_packing, HkGraph, HkPacking, PackingMode};
pub use packing::construct_linear_4uniform;
pub use rpartite::construct_complete_r_partite;
pub use tolhuizen::{construct_tolhuizen, TolhuizenCode};

use crate::family::FamilyError;
use crate::field::FieldError;
use crate::poly::IndependenceError;
use std::fmt;

#[derive(Debug)]
pub enum ConstructError {
    UniverseTooSmall { need: usize, have: usize },
    /// Parameters fall in a range the construction does not cover.
    OutOfRegime(String),
    BadShape(String),
    Field(FieldError),
    GoodSet(IndependenceError),
    Family(FamilyError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::UniverseTooSmall { need, have } => {
                write!(f, "need a universe of at least {need}, have {have}")
            }
            ConstructError::OutOfRegime(s) => write!(f, "{s}"),
            ConstructError::BadShape(s) => write!(f, "{s}"),
            ConstructError::Field(e) => write!(f, "{e}"),
            ConstructError::GoodSet(e) => write!(f, "{e}"),
            ConstructError::Family(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ConstructError {}

impl From<FieldError> for ConstructError {
    fn from(e: FieldError) -> Self {
        ConstructError::Field(e)
    }
}

impl From<IndependenceError> for ConstructError {
    fn from(e: IndependenceError) -> Self {
        ConstructError::GoodSet(e)
    }
}

impl From<FamilyError> for ConstructError {
    fn from(e: FamilyError) -> Self {
        ConstructError::Family(e)
    }
}
