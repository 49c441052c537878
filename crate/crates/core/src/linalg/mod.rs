//! Exact linear algebra over `Z`.

mod charpoly;
mod hnf;
mod lll;
mod matrix;
mod snf;

pub use charpoly::{char_poly, char_poly_berkowitz};
pub(crate) use hnf::hnf_tracked;
pub use lll::{lll_reduce, size_reduce};
pub use hnf::{hnf, inverse_unimodular, is_basis, kernel_basis, HermiteForm, KernelBasis};
pub(crate) use matrix::axpy;
pub use matrix::{IntMatrix, IntVec};
pub use snf::{
    divisibility_chain, ds, has_free_cokernel, is_surjective_over_z, snf, solve_preimage,
    PreimageSolver, SnfCertificate,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Determinant of a square matrix.
pub fn det(a: &IntMatrix) -> crate::Result<BigInt> {
    a.det()
}

/// `gcd` of the entries of `v`; a vector extends to a basis iff this is 1.
pub fn content(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}
