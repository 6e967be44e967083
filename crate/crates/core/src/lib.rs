//! Finite-dimensional Hermitian representations of the de Sitter and
//! anti-de Sitter Lie algebras, built from blocks of the homogeneous Lorentz
//! algebra coupled by translation generators.
//!
//! The crate is `no_std` with `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coupling;
pub mod error;
pub mod hla;
pub mod numeric;
pub mod representation;
pub mod solver;
pub mod su2;
pub mod verifier;

pub use error::{Error, Result};
pub use hla::BlockLabel;
pub use numeric::{CMatrix, HalfInt, Rat};
pub use representation::{
    assemble, canonical_backbone, canonical_generators, Algebra, BackboneGraph, CanonicalSpec,
    Family, Generator, GeneratorSet,
};
