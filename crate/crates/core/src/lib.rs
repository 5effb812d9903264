//! Exact computational algebra for corings built from finite-dimensional
//! bimodules.
//!
//! The crate constructs comatrix and Sweedler corings from bimodules given by
//! action matrices, realizes every tensor product over a ring as an explicit
//! quotient space, and verifies the correspondences between coring
//! endomorphisms and sub-bimodules of the endomorphism ring by exhaustive
//! computation over small finite fields.

pub mod adjunction;
pub mod algebra;
pub mod bimodule;
pub mod comodule;
pub mod coring;
pub mod correspondence;
pub mod endo;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod matrix;
pub mod separability;
pub mod subbimodule;
pub mod subspace;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use subspace::{QuotientSpace, Subspace};
