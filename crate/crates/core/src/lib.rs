//! Exact arithmetic over iterated real quadratic extensions of the
//! rationals, together with the 4-dimensional geometry, transformation
//! predicates, and group classification built on top of it.
//!
//! Everything downstream of [`efield::FieldElem`] is decided by exact
//! sign computations; no floating point enters any predicate.

pub mod classify;
pub mod efield;
pub mod geom;
pub mod model;
pub mod verify;
pub mod xform;
