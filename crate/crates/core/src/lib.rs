//! Exact arithmetic over word-size finite fields and dot-product kernels
//! that delay, block or skip modular reductions.
//!
//! Four element representations are provided: classical residues
//! ([`classical`]), Montgomery form ([`montgomery`]), floating point residues
//! ([`floatrep`]) and discrete-logarithm (Zech) codes ([`zech`]). The
//! [`kernels`] module computes dot products over them, and [`oracle`] is an
//! independent exact reference used by the tests and the benchmark harness.

pub mod classical;
pub mod error;
pub mod field;
pub mod floatrep;
pub mod kernels;
mod instrument;
pub mod montgomery;
pub mod numtheory;
pub mod oracle;
pub mod zech;

pub use classical::{Centered, CenteredField, RemainderField, Zpz, ZpzField};
pub use error::{Error, Result};
pub use field::FiniteField;
pub use floatrep::{FloatElem, FloatField};
pub use kernels::{DotResult, KernelConfig, KernelKind, Repr};
pub use montgomery::{Mont, MontgomeryContext};
pub use numtheory::{FieldParams, Storage, Width};
pub use zech::{FullCode, FullTables, ZechCode, ZechTables};
