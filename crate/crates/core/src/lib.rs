//! Sparse associative arrays and graph construction over pluggable value
//! algebras.
//!
//! An adjacency array is built from source and target incidence arrays as
//! `E_outᵀ ⊕.⊗ E_in`. Whether that product really is an adjacency array
//! depends on the algebra: ⊕ must be zero-sum-free, ⊗ must have no zero
//! divisors and 0 must annihilate ⊗. The [`algebra`] module checks those
//! conditions and [`witness`] builds concrete failing graphs when they do
//! not hold.

pub mod algebra;
pub mod cli;
pub mod array;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod value;
pub mod witness;

pub use error::{Error, Result};
pub use value::Value;
