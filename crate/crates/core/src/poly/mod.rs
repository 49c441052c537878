//! Polynomials over `Z`, matrices of them, and Smith form certificates over
//! `Z[x]`.

mod companion;
mod matrix;
#[allow(clippy::module_inception)]
mod poly;
mod snf;
mod tracked;

pub use companion::{block_diagonal, companion, CompanionBlock};
pub use matrix::PolyMatrix;
pub use poly::IntPoly;
pub use snf::{
    block_companion_snf, poly_divisibility_chain, reduce_to_snf_zx, verify_poly_snf,
    x_plus_shift_matrix, PolySnfCertificate, ReductionFailure,
};
