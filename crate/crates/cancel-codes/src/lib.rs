//! Cancellative and cover-free set families: exact arithmetic backends,
//! family predicates with violation certificates, explicit code
//! constructions, branch-and-bound extremal search, and closed-form bounds.
//!
//! The crate is organized around `family::SetFamily` (vertex subsets as
//! bit masks over a universe of at most 128 vertices). Every predicate
//! returns a replayable `Witness` on failure, every construction emits a
//! family that the predicates can certify independently, and `search`
//! computes exact extremal values at small parameters.

pub mod bounds;
pub mod cli;
pub mod construct;
pub mod family;
pub mod field;
pub mod poly;
pub mod search;

pub use field::{Field, FieldElement};
