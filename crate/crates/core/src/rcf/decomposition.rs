use serde::{Deserialize, Serialize};

use crate::json;
use crate::linalg::{char_poly, IntMatrix, IntVec};
use crate::poly::{block_diagonal, companion, poly_divisibility_chain, CompanionBlock, IntPoly};

/// Rational canonical form over `Z`: the columns of `basis` are
/// `v_i, A v_i, ..., A^{d_i - 1} v_i` block by block, and in that basis the
/// operator is the block companion matrix of `a_1 | ... | a_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcfDecomposition {
    pub operator: IntMatrix,
    #[serde(with = "json::int_vecs")]
    pub generators: Vec<IntVec>,
    pub annihilators: Vec<IntPoly>,
    pub basis: IntMatrix,
}

impl RcfDecomposition {
    /// Build the cyclic basis from generators and annihilator degrees.
    pub fn from_generators(operator: IntMatrix, generators: Vec<IntVec>, annihilators: Vec<IntPoly>) -> Self {
        let n = operator.rows();
        let mut cols: Vec<IntVec> = Vec::with_capacity(n);
        for (g, a) in generators.iter().zip(&annihilators) {
            let mut v = g.clone();
            for j in 0..a.degree().unwrap_or(0) {
                if j > 0 {
                    v = operator.mul_vec(&v);
                }
                cols.push(v.clone());
            }
        }
        let basis = if cols.iter().all(|c| c.len() == n) {
            IntMatrix::from_columns(n, &cols).unwrap_or_else(|_| IntMatrix::zeros(n, 0))
        } else {
            IntMatrix::zeros(n, 0)
        };
        Self {
            operator,
            generators,
            annihilators,
            basis,
        }
    }

    /// The companion blocks `C_{a_1}, ..., C_{a_m}`.
    pub fn blocks(&self) -> crate::Result<Vec<CompanionBlock>> {
        self.annihilators.iter().map(companion).collect()
    }

    /// `basis^{-1} * operator * basis`, i.e. the block companion matrix.
    pub fn canonical_matrix(&self) -> crate::Result<IntMatrix> {
        Ok(block_diagonal(&self.blocks()?))
    }
}

/// Like [`verify_rcf`] but says which check failed.
pub fn check_rcf(dec: &RcfDecomposition) -> Result<(), String> {
    let a = &dec.operator;
    let n = a.require_square().map_err(|e| e.to_string())?;
    if dec.basis.shape() != (n, n) {
        return Err(format!("basis has shape {:?}, expected {n}x{n}", dec.basis.shape()));
    }
    if dec.generators.len() != dec.annihilators.len() {
        return Err("generator and annihilator counts differ".into());
    }
    let blocks = dec.blocks().map_err(|e| format!("annihilator not monic and non-constant: {e}"))?;
    if !poly_divisibility_chain(&dec.annihilators) {
        return Err("annihilators do not form a divisibility chain".into());
    }
    let mut start = 0;
    for (g, b) in dec.generators.iter().zip(&blocks) {
        if start >= n || dec.basis.column(start) != *g {
            return Err(format!("generator does not start its block at column {start}"));
        }
        start += b.degree();
    }
    if start != n {
        return Err(format!("block sizes sum to {start}, expected {n}"));
    }
    let r = block_diagonal(&blocks);
    if &(a * &dec.basis) != &(&dec.basis * &r) {
        return Err("operator is not block companion in this basis".into());
    }
    let product = dec.annihilators.iter().fold(IntPoly::one(), |acc, p| &acc * p);
    if char_poly(a).map_err(|e| e.to_string())? != product {
        return Err("annihilators do not multiply to the characteristic polynomial".into());
    }
    if !dec.basis.is_unimodular() {
        return Err("basis is not unimodular".into());
    }
    Ok(())
}

/// Basis unimodular, exact block companion conjugate, monic divisibility
/// chain, and annihilators multiplying to the characteristic polynomial.
pub fn verify_rcf(dec: &RcfDecomposition) -> bool {
    check_rcf(dec).is_ok()
}
