//! Hermite normal form, saturated kernels, unimodular inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, IntVec};
use crate::json;

/// `U * A = H`, `U` unimodular, `H` in row echelon form with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `(row, col)` of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct RowReducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: Option<IntMatrix>,
}

impl RowReducer {
    fn add_row(&mut self, target: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        self.a.add_row_multiple(target, src, c);
        self.u.add_row_multiple(target, src, c);
        if let Some(inv) = &mut self.u_inv {
            inv.add_col_multiple(src, target, &-c);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        if let Some(inv) = &mut self.u_inv {
            inv.swap_cols(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        if let Some(inv) = &mut self.u_inv {
            inv.negate_col(i);
        }
    }

    fn run(&mut self) -> Vec<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !self.a[(i, c)].is_zero())
                    .min_by(|&i, &j| self.a[(i, c)].abs().cmp(&self.a[(j, c)].abs()));
                let Some(p) = best else { break };
                self.swap_rows(r, p);
                let pivot = self.a[(r, c)].clone();
                let mut done = true;
                for i in r + 1..m {
                    if self.a[(i, c)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, c)].div_floor(&pivot);
                    self.add_row(i, r, &-q);
                    done &= self.a[(i, c)].is_zero();
                }
                if done {
                    break;
                }
            }
            if self.a[(r, c)].is_zero() {
                continue;
            }
            if self.a[(r, c)].is_negative() {
                self.negate_row(r);
            }
            let pivot = self.a[(r, c)].clone();
            for i in 0..r {
                let q = self.a[(i, c)].div_floor(&pivot);
                self.add_row(i, r, &-q);
            }
            pivots.push((r, c));
            r += 1;
        }
        pivots
    }
}

/// Row-style Hermite normal form.
pub fn hnf(a: &IntMatrix) -> HermiteForm {
    hnf_tracked(a, false).0
}

/// Hermite form together with `U^{-1}` when requested.
pub(crate) fn hnf_tracked(a: &IntMatrix, with_inverse: bool) -> (HermiteForm, Option<IntMatrix>) {
    let m = a.rows();
    let mut red = RowReducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: with_inverse.then(|| IntMatrix::identity(m)),
    };
    let pivots = red.run();
    (
        HermiteForm {
            h: red.a,
            u: red.u,
            pivots,
        },
        red.u_inv,
    )
}

/// Basis of the full integer kernel `{x in Z^n : A x = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBasis {
    #[serde(with = "json::int_vecs")]
    pub vectors: Vec<IntVec>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vectors as the columns of an `ambient x len` matrix.
    pub fn to_matrix(&self, ambient: usize) -> IntMatrix {
        IntMatrix::from_columns(ambient, &self.vectors).expect("kernel vectors share a length")
    }
}

/// Saturated kernel basis: the trailing rows of the transform that puts
/// `A^T` into Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> KernelBasis {
    let form = hnf(&a.transpose());
    let rank = form.rank();
    let vectors = (rank..a.cols()).map(|i| form.u.row(i).to_vec()).collect();
    KernelBasis { vectors }
}

/// `true` iff the vectors are the columns of a unimodular square matrix.
pub fn is_basis(vectors: &[IntVec]) -> bool {
    let n = vectors.len();
    if vectors.iter().any(|v| v.len() != n) {
        return false;
    }
    IntMatrix::from_columns(n, vectors)
        .map(|m| m.is_unimodular())
        .unwrap_or(false)
}

/// Integer inverse of a unimodular matrix, or `None` if it is not one.
///
/// Fraction-free Gauss-Jordan on `[T | I]`: every intermediate entry is a
/// minor of the augmented matrix, so sizes stay bounded, and the right half
/// ends as `det(T) T^{-1}`.
pub fn inverse_unimodular(t: &IntMatrix) -> Option<IntMatrix> {
    if !t.is_square() {
        return None;
    }
    let n = t.rows();
    let w = 2 * n;
    let mut a = IntMatrix::zeros(n, w);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = t[(i, j)].clone();
        }
        a[(i, n + i)] = BigInt::one();
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
        a.swap_rows(p, k);
        let pivot = a[(k, k)].clone();
        let pivot_row = a.row(k).to_vec();
        for i in (0..n).filter(|&i| i != k) {
            let f = a[(i, k)].clone();
            let row = a.row_mut(i);
            for j in 0..w {
                if j == k {
                    continue;
                }
                let mut v = &pivot * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v -= &f * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = &prev;
    if !d.abs().is_one() {
        return None;
    }
    let mut inv = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = &a[(i, n + j)] * d;
        }
    }
    Some(inv)
}
