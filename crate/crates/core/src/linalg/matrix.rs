use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;

/// Column vector of arbitrary-precision integers.
pub type IntVec = Vec<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Builds a matrix from `i64` rows; all rows must have the same length.
    ///
    /// Panics on ragged input, so keep it to literals and tests.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, with `rows` rows.
    pub fn from_columns(rows: usize, columns: &[IntVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
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

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[BigInt]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let acc = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                axpy(acc, a, rhs.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn try_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[src]`.
    pub fn add_row_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        debug_assert_ne!(target, src);
        if c.is_zero() {
            return;
        }
        let cols = self.cols;
        let (t, s) = two_rows(&mut self.data, cols, target, src);
        axpy(t, c, s);
    }

    /// `col[target] += c * col[src]`.
    pub fn add_col_multiple(&mut self, target: usize, src: usize, c: &BigInt) {
        debug_assert_ne!(target, src);
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let prod = c * s;
            self.data[i * self.cols + target] += prod;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in self.row_mut(i) {
            *v = -std::mem::take(v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// Replaces rows `(a, b)` by `e * (row_a; row_b)` for a 2x2 matrix `e`.
    pub fn combine_rows(&mut self, a: usize, b: usize, e: [[&BigInt; 2]; 2]) {
        for j in 0..self.cols {
            let x = &self.data[a * self.cols + j];
            let y = &self.data[b * self.cols + j];
            let nx = e[0][0] * x + e[0][1] * y;
            let ny = e[1][0] * x + e[1][1] * y;
            self.data[a * self.cols + j] = nx;
            self.data[b * self.cols + j] = ny;
        }
    }

    /// Replaces columns `(a, b)` by `(col_a, col_b) * e`.
    pub fn combine_cols(&mut self, a: usize, b: usize, e: [[&BigInt; 2]; 2]) {
        for i in 0..self.rows {
            let x = &self.data[i * self.cols + a];
            let y = &self.data[i * self.cols + b];
            let nx = x * e[0][0] + y * e[1][0];
            let ny = x * e[0][1] + y * e[1][1];
            self.data[i * self.cols + a] = nx;
            self.data[i * self.cols + b] = ny;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v.div_floor(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign { -d } else { d })
    }

    /// Rank over Q, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            for i in r + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = &a[(r, c)] * &a[(i, j)] - &a[(i, c)] * &a[(r, j)];
                    a[(i, j)] = v.div_floor(&prev);
                }
                a[(i, c)] = BigInt::zero();
            }
            prev = a[(r, c)].clone();
            r += 1;
        }
        r
    }

    /// `true` iff the matrix is square with determinant `±1`.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

/// `acc += c * src`, skipping zeros and avoiding multiplication by `±1`.
pub(crate) fn axpy(acc: &mut [BigInt], c: &BigInt, src: &[BigInt]) {
    if c.is_one() {
        for (t, s) in acc.iter_mut().zip(src) {
            if !s.is_zero() {
                *t += s;
            }
        }
    } else if (-c).is_one() {
        for (t, s) in acc.iter_mut().zip(src) {
            if !s.is_zero() {
                *t -= s;
            }
        }
    } else {
        for (t, s) in acc.iter_mut().zip(src) {
            if !s.is_zero() {
                *t += c * s;
            }
        }
    }
}

fn two_rows(
    data: &mut [BigInt],
    cols: usize,
    target: usize,
    src: usize,
) -> (&mut [BigInt], &[BigInt]) {
    if target < src {
        let (lo, hi) = data.split_at_mut(src * cols);
        (&mut lo[target * cols..(target + 1) * cols], &hi[..cols])
    } else {
        let (lo, hi) = data.split_at_mut(target * cols);
        (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|i| self.row(i).iter().map(json::int_to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        if raw.data.len() != raw.rows || raw.data.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom("matrix data does not match rows/cols"));
        }
        let data = raw
            .data
            .iter()
            .flatten()
            .map(|s| json::parse_int::<D::Error>(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntMatrix {
            rows: raw.rows,
            cols: raw.cols,
            data,
        })
    }
}
