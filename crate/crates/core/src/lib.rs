//! Well-rounded sublattices of the hexagonal lattice.
//!
//! Exact integer arithmetic throughout: sublattices are integer matrices in
//! hexagonal coordinates, triples are `i64` or `BigInt`, and only the
//! Epstein zeta sums use floating point (with explicit error bounds).

pub mod arith;
pub mod conic;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod optimizer;
pub mod parallel;
pub mod triples;

pub use conic::{ConicSpec, ProjectiveTriple};
pub use enumeration::IndexRepresentation;
pub use error::{Error, Result};
pub use lattice::{ClassParams, HexSublattice};
pub use optimizer::{MaxMinResult, ZetaValue};
pub use triples::{AssociatedPair, EisensteinTriple, Generator};
