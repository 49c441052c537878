//! From a rational canonical form over `Z` to a Smith form certificate
//! over `Z[x]`.
//!
//! If `T^{-1} A T = R` is block companion and `P_c (xI - R) Q_c = D`, then
//! `(P_c T^{-1}) (xI - A) (T Q_c) = D`.

use super::decomposition::RcfDecomposition;
use crate::error::{Error, Result};
use crate::linalg::inverse_unimodular;
use crate::poly::{block_companion_snf, PolySnfCertificate};

/// Certificate for `xI - A`, diagonal `(1, ..., 1, a_1, ..., a_m)`.
pub fn rcf_to_certificate(dec: &RcfDecomposition) -> Result<PolySnfCertificate> {
    let blocks = dec.blocks()?;
    let c = block_companion_snf(&blocks)?;
    let t = &dec.basis;
    let t_inv = inverse_unimodular(t).ok_or_else(|| Error::Malformed("basis is not unimodular".into()))?;
    Ok(PolySnfCertificate {
        p: c.p.right_mul_int(&t_inv)?,
        p_inv: c.p_inv.left_mul_int(t)?,
        q: c.q.left_mul_int(t)?,
        q_inv: c.q_inv.right_mul_int(&t_inv)?,
        d: c.d,
        diag: c.diag,
    })
}

/// Certificate for `A + xI`, with the diagonal normalized to positive
/// leading coefficients.
pub fn conjecture_certificate(dec: &RcfDecomposition) -> Result<PolySnfCertificate> {
    Ok(rcf_to_certificate(dec)?.flip_convention())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use crate::poly::{verify_poly_snf, IntPoly, PolyMatrix};
    use crate::rcf::{rcf_base_case, SearchConfig};

    #[test]
    fn du2_round_trip() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
        let dec = rcf_base_case(&a, &SearchConfig::default()).unwrap();
        let cert = rcf_to_certificate(&dec).unwrap();
        assert!(verify_poly_snf(&cert, &PolyMatrix::x_minus(&a).unwrap()));
        let plus = conjecture_certificate(&dec).unwrap();
        assert!(verify_poly_snf(&plus, &PolyMatrix::x_plus(&a).unwrap()));
        assert_eq!(plus.diag, vec![IntPoly::one(), IntPoly::from_i64(&[3, 4, 1])]);
    }
}
