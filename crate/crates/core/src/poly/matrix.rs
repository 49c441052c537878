use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{add_product, IntPoly};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Dense matrix over `Z[x]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![IntPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = IntPoly::one();
        }
        m
    }

    pub fn diagonal_matrix(diag: &[IntPoly]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// The integer matrix viewed as constant polynomials.
    pub fn from_int(a: &IntMatrix) -> Self {
        Self {
            rows: a.rows(),
            cols: a.cols(),
            data: a.entries().iter().map(|c| IntPoly::constant(c.clone())).collect(),
        }
    }

    /// `xI - A`.
    pub fn x_minus(a: &IntMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = -a[(i, j)].clone();
                m[(i, j)] = if i == j {
                    IntPoly::new(vec![c, BigInt::from(1)])
                } else {
                    IntPoly::constant(c)
                };
            }
        }
        Ok(m)
    }

    /// `xI + A`, the Miller–Reiner convention.
    pub fn x_plus(a: &IntMatrix) -> Result<Self> {
        Self::x_minus(&a.scale(&BigInt::from(-1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[IntPoly] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [IntPoly] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[IntPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(IntPoly::degree).max()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<IntPoly> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&IntPoly) -> IntPoly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entry-wise evaluation at `x = t`.
    pub fn eval(&self, t: &BigInt) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|p| p.eval(t)).collect(),
        )
        .expect("shape preserved")
    }

    /// Entry-wise `x -> x + c`.
    pub fn shift(&self, c: &BigInt) -> Self {
        self.map(|p| p.shift(c))
    }

    /// Entry-wise `x -> -x`.
    pub fn negate_var(&self) -> Self {
        self.map(IntPoly::negate_var)
    }

    pub fn try_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        let mut acc: Vec<Vec<BigInt>> = vec![Vec::new(); rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    add_product(slot, a, &rhs.data[k * rhs.cols + j]);
                }
            }
            out.extend(acc.iter_mut().map(|v| IntPoly::new(std::mem::take(v))));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        })
    }

    /// `A * self` for an integer matrix `A`.
    pub fn left_mul_int(&self, a: &IntMatrix) -> Result<PolyMatrix> {
        PolyMatrix::from_int(a).try_mul(self)
    }

    /// `self * A` for an integer matrix `A`.
    pub fn right_mul_int(&self, a: &IntMatrix) -> Result<PolyMatrix> {
        self.try_mul(&PolyMatrix::from_int(a))
    }

    /// Determinant by fraction-free elimination over `Z[x]`.
    pub fn det(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(IntPoly::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = IntPoly::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.data.swap(i * n + j, k * n + j);
                        }
                        negate = !negate;
                    }
                    None => return Ok(IntPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[(k, k)] * &a[(i, j)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if negate { -&d } else { d })
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = IntPoly;

    fn index(&self, (i, j): (usize, usize)) -> &IntPoly {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut IntPoly {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;

    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i).iter().map(|p| p.to_string()).collect::<Vec<_>>()
            }))
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct PolyMatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<Vec<IntPoly>>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyMatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows).map(|i| self.row(i).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyMatrixJson::deserialize(d)?;
        if raw.data.len() != raw.rows || raw.data.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom("matrix data does not match rows/cols"));
        }
        Ok(PolyMatrix {
            rows: raw.rows,
            cols: raw.cols,
            data: raw.data.into_iter().flatten().collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_minus_and_det() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
        let m = PolyMatrix::x_minus(&a).unwrap();
        assert_eq!(m[(0, 0)], IntPoly::from_i64(&[-2, 1]));
        assert_eq!(m[(0, 1)], IntPoly::from_i64(&[-1]));
        assert_eq!(m.det().unwrap(), IntPoly::from_i64(&[3, -4, 1]));
        let plus = PolyMatrix::x_plus(&a).unwrap();
        assert_eq!(plus[(1, 1)], IntPoly::from_i64(&[2, 1]));
        assert_eq!(plus[(1, 0)], IntPoly::from_i64(&[1]));
    }

    #[test]
    fn det_with_zero_leading_entry() {
        let mut m = PolyMatrix::zeros(2, 2);
        m[(0, 1)] = IntPoly::x();
        m[(1, 0)] = IntPoly::from_i64(&[1, 1]);
        assert_eq!(m.det().unwrap(), IntPoly::from_i64(&[0, -1, -1]));
    }

    #[test]
    fn product_and_evaluation_commute() {
        let a = PolyMatrix::x_minus(&IntMatrix::from_rows(&[[1, 2], [3, 4]])).unwrap();
        let b = PolyMatrix::x_minus(&IntMatrix::from_rows(&[[0, -1], [5, 2]])).unwrap();
        let ab = &a * &b;
        for t in [-2i64, 0, 3] {
            let t = BigInt::from(t);
            assert_eq!(ab.eval(&t), &a.eval(&t) * &b.eval(&t));
        }
    }

    #[test]
    fn json_round_trip() {
        let m = PolyMatrix::x_minus(&IntMatrix::from_rows(&[[2]])).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":1,"data":[[{"coeffs":["-2","1"]}]]}"#);
        assert_eq!(serde_json::from_str::<PolyMatrix>(&s).unwrap(), m);
    }
}
