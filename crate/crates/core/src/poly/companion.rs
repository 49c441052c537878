use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A monic polynomial together with its companion matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionBlock {
    pub poly: IntPoly,
    pub matrix: IntMatrix,
}

impl CompanionBlock {
    pub fn degree(&self) -> usize {
        self.matrix.rows()
    }
}

/// Companion matrix of a monic, non-constant polynomial: ones on the
/// sub-diagonal and the negated low coefficients in the last column.
pub fn companion(a: &IntPoly) -> Result<CompanionBlock> {
    let d = match a.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::NotMonic(format!("constant polynomial {a}"))),
    };
    if !a.is_monic() {
        return Err(Error::NotMonic(a.to_string()));
    }
    let mut m = IntMatrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = BigInt::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -a.coeff(i);
    }
    Ok(CompanionBlock {
        poly: a.clone(),
        matrix: m,
    })
}

/// Block-diagonal matrix with the given blocks in order.
pub fn block_diagonal(blocks: &[CompanionBlock]) -> IntMatrix {
    let n: usize = blocks.iter().map(CompanionBlock::degree).sum();
    let mut m = IntMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let d = b.degree();
        for i in 0..d {
            for j in 0..d {
                m[(off + i, off + j)] = b.matrix[(i, j)].clone();
            }
        }
        off += d;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::char_poly;

    #[test]
    fn linear_block() {
        let b = companion(&IntPoly::from_i64(&[-5, 1])).unwrap();
        assert_eq!(b.matrix, IntMatrix::from_rows(&[[5]]));
    }

    #[test]
    fn quadratic_and_cubic() {
        let b = companion(&IntPoly::from_i64(&[3, -4, 1])).unwrap();
        assert_eq!(b.matrix, IntMatrix::from_rows(&[[0, -3], [1, 4]]));
        let c = companion(&IntPoly::from_i64(&[-8, 14, -7, 1])).unwrap();
        assert_eq!(
            c.matrix,
            IntMatrix::from_rows(&[[0, 0, 8], [1, 0, -14], [0, 1, 7]])
        );
        assert_eq!(char_poly(&c.matrix).unwrap(), c.poly);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(companion(&IntPoly::from_i64(&[1, 2])).is_err());
        assert!(companion(&IntPoly::from_i64(&[7])).is_err());
        assert!(companion(&IntPoly::zero()).is_err());
    }
}
