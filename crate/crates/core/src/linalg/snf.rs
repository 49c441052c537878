//! Smith normal form over `Z` with unimodular certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, IntVec};
use crate::error::{Error, Result};
use crate::json;

/// `P * A * Q = D` with `P`, `Q` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct SnfCertificate {
    pub p: IntMatrix,
    pub d: IntMatrix,
    pub q: IntMatrix,
    /// Diagonal of `D`, the tuple `DS(A)`; non-negative, each entry
    /// dividing the next.
    #[serde(rename = "diag", with = "json::int_vec")]
    pub diag: IntVec,
}

impl SnfCertificate {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|v| !v.is_zero()).count()
    }

    /// Replays the certificate against `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let (m, n) = a.shape();
        if self.p.shape() != (m, m) || self.q.shape() != (n, n) || self.d.shape() != (m, n) {
            return false;
        }
        if self.diag.len() != m.min(n) {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                let v = &self.d[(i, j)];
                let ok = if i == j {
                    *v == self.diag[i] && !v.is_negative()
                } else {
                    v.is_zero()
                };
                if !ok {
                    return false;
                }
            }
        }
        if !divisibility_chain(&self.diag) {
            return false;
        }
        if !(self.p.is_unimodular() && self.q.is_unimodular()) {
            return false;
        }
        &(&self.p * a) * &self.q == self.d
    }
}

/// `s_1 | s_2 | ...`, where `0` is only divisible into `0`.
pub fn divisibility_chain(diag: &[BigInt]) -> bool {
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        }
    })
}

struct Elimination {
    a: IntMatrix,
    p: Option<IntMatrix>,
    q: Option<IntMatrix>,
}

impl Elimination {
    fn new(a: &IntMatrix, track: bool) -> Self {
        let (m, n) = a.shape();
        Self {
            a: a.clone(),
            p: track.then(|| IntMatrix::identity(m)),
            q: track.then(|| IntMatrix::identity(n)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(p) = &mut self.p {
            p.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(q) = &mut self.q {
            q.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(target, src, c);
        if let Some(p) = &mut self.p {
            p.add_row_multiple(target, src, c);
        }
    }

    fn add_col(&mut self, target: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(target, src, c);
        if let Some(q) = &mut self.q {
            q.add_col_multiple(target, src, c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(p) = &mut self.p {
            p.negate_row(i);
        }
    }

    /// Nonzero entry of least absolute value in the trailing block, ties
    /// broken by `(row, col)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..m {
            for j in t..n {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if v.abs().is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, b)| v.abs() < *b) {
                    best = Some(((i, j), v.abs()));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    fn run(&mut self) {
        let (m, n) = self.a.shape();
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[(t, t)].clone();

                let mut clean = true;
                for i in t + 1..m {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let (quo, rem) = self.a[(i, t)].div_mod_floor(&pivot);
                    self.add_row(i, t, &-quo);
                    clean &= rem.is_zero();
                }
                for j in t + 1..n {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let (quo, rem) = self.a[(t, j)].div_mod_floor(&pivot);
                    self.add_col(j, t, &-quo);
                    clean &= rem.is_zero();
                }
                if !clean {
                    continue;
                }

                if !pivot.abs().is_one() {
                    let bad = (t + 1..m).find(|&i| {
                        (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                    });
                    if let Some(i) = bad {
                        self.add_row(t, i, &BigInt::one());
                        continue;
                    }
                }
                if pivot.is_negative() {
                    self.negate_row(t);
                }
                break;
            }
        }
    }

    fn diag(&self) -> IntVec {
        let k = self.a.rows().min(self.a.cols());
        (0..k).map(|i| self.a[(i, i)].clone()).collect()
    }
}

/// Smith normal form with certificate.
pub fn snf(a: &IntMatrix) -> SnfCertificate {
    let mut e = Elimination::new(a, true);
    e.run();
    let diag = e.diag();
    SnfCertificate {
        p: e.p.take().expect("tracked"),
        q: e.q.take().expect("tracked"),
        d: e.a,
        diag,
    }
}

/// `DS(A)`: the non-negative Smith diagonal, `min(rows, cols)` entries.
pub fn ds(a: &IntMatrix) -> IntVec {
    let mut e = Elimination::new(a, false);
    e.run();
    e.diag()
}

/// `true` iff `A: Z^cols -> Z^rows` is onto.
pub fn is_surjective_over_z(a: &IntMatrix) -> bool {
    a.rows() <= a.cols() && ds(a).iter().all(One::is_one)
}

/// `true` iff `Z^rows / im A` is torsion-free.
pub fn has_free_cokernel(a: &IntMatrix) -> bool {
    ds(a).iter().all(|v| v.is_zero() || v.is_one())
}

/// Solves `A x = b` over `Z` repeatedly against one Smith decomposition.
#[derive(Debug, Clone)]
pub struct PreimageSolver {
    cert: SnfCertificate,
}

impl PreimageSolver {
    pub fn new(a: &IntMatrix) -> Self {
        Self { cert: snf(a) }
    }

    /// `Ok(None)` when `b` has no integer preimage (whether or not it has a
    /// rational one).
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<IntVec>> {
        let (m, n) = (self.cert.p.rows(), self.cert.q.rows());
        if b.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {m}",
                b.len()
            )));
        }
        let c = self.cert.p.mul_vec(b);
        let mut y = vec![BigInt::zero(); n];
        for (i, ci) in c.iter().enumerate() {
            let di = self.cert.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if di.is_zero() {
                if !ci.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let (quo, rem) = ci.div_rem(&di);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = quo;
        }
        Ok(Some(self.cert.q.mul_vec(&y)))
    }
}

/// Integer solution of `A x = b`, or `None`.
pub fn solve_preimage(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntVec>> {
    PreimageSolver::new(a).solve(b)
}
