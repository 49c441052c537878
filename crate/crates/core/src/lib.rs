//! Differential posets and the Smith normal form of their `DU` operators.
//!
//! The crate builds Young's lattice, the Young–Fibonacci lattice and their
//! finite Cartesian products, computes the up/down operator matrices, and
//! verifies that `[DU_n] + xI` has a Smith normal form over `Z[x]` by
//! constructing a rational canonical form over `Z` and turning it into a
//! replayable unimodular certificate.
//!
//! Module map:
//!
//! * [`poset`] ranks, covers and operator matrices.
//! * [`linalg`] exact integer matrices: Smith/Hermite forms, kernels,
//!   determinants, characteristic polynomials.
//! * [`poly`] polynomials and polynomial matrices over `Z`, companion blocks,
//!   Smith form certificates over `Z[x]`.
//! * [`theory`] closed-form spectra, invariant factors and hypothesis checks.
//! * [`rcf`] rational canonical form over `Z`: base-case search, the
//!   inductive construction across ranks, and the bridge to certificates.

pub mod error;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod poset;
pub mod rcf;
pub mod theory;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntVec};
pub use poly::{IntPoly, PolyMatrix};
pub use poset::{Poset, PosetElement, RankedPosetSpec};

pub use num_bigint::BigInt;

/// Library version, embedded in report headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
