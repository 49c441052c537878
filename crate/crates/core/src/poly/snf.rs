use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::companion::{block_diagonal, companion, CompanionBlock};
use super::tracked::TrackedPolyMatrix;
use super::{IntPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Smith form certificate over `Z[x]`: `P * M * Q = D`.
///
/// The inverses of `P` and `Q` travel with the certificate. Checking
/// `P * P_inv = I` proves `det P` is a unit by multiplication alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySnfCertificate {
    #[serde(rename = "P")]
    pub p: PolyMatrix,
    #[serde(rename = "D")]
    pub d: PolyMatrix,
    #[serde(rename = "Q")]
    pub q: PolyMatrix,
    #[serde(rename = "P_inv")]
    pub p_inv: PolyMatrix,
    #[serde(rename = "Q_inv")]
    pub q_inv: PolyMatrix,
    pub diag: Vec<IntPoly>,
}

impl PolySnfCertificate {
    fn from_tracked(t: TrackedPolyMatrix) -> Self {
        let diag = t.m.diagonal();
        Self {
            p: t.p,
            d: t.m,
            q: t.q,
            p_inv: t.p_inv,
            q_inv: t.q_inv,
            diag,
        }
    }

    /// Diagonal entries that are not units.
    pub fn invariant_factors(&self) -> Vec<IntPoly> {
        self.diag.iter().filter(|d| !d.is_unit()).cloned().collect()
    }

    /// Turn a certificate for `M(x)` into one for `-M(-x)`, with the new
    /// diagonal re-normalized to positive leading coefficients.
    ///
    /// Applied to `xI - A` this yields a certificate for `xI + A`.
    pub fn flip_convention(&self) -> Self {
        let neg_d = self.d.negate_var().map(|e| -e);
        let signs: Vec<bool> = (0..neg_d.rows())
            .map(|i| i < neg_d.cols() && neg_d[(i, i)].normalize_sign().1 < 0)
            .collect();
        let mut p = self.p.negate_var();
        let mut p_inv = self.p_inv.negate_var();
        let mut d = neg_d;
        for (i, &flip) in signs.iter().enumerate() {
            if !flip {
                continue;
            }
            for k in 0..p.cols() {
                p[(i, k)] = -&p[(i, k)];
                p_inv[(k, i)] = -&p_inv[(k, i)];
            }
            for k in 0..d.cols() {
                d[(i, k)] = -&d[(i, k)];
            }
        }
        let diag = d.diagonal();
        Self {
            p,
            d,
            q: self.q.negate_var(),
            p_inv,
            q_inv: self.q_inv.negate_var(),
            diag,
        }
    }
}

/// `d_1 | d_2 | ...` in `Z[x]`.
pub fn poly_divisibility_chain(diag: &[IntPoly]) -> bool {
    diag.windows(2).all(|w| w[0].divides(&w[1]))
}

fn normalized(p: &IntPoly) -> bool {
    p.leading_coeff().is_none_or(|c| c.is_positive())
}

/// Replay a certificate against `m`.
pub fn verify_poly_snf(cert: &PolySnfCertificate, m: &PolyMatrix) -> bool {
    let (r, c) = m.shape();
    if cert.p.shape() != (r, r)
        || cert.p_inv.shape() != (r, r)
        || cert.q.shape() != (c, c)
        || cert.q_inv.shape() != (c, c)
        || cert.d.shape() != (r, c)
        || cert.diag.len() != r.min(c)
    {
        return false;
    }
    if !cert.d.is_diagonal() || cert.d.diagonal() != cert.diag {
        return false;
    }
    if !cert.diag.iter().all(normalized) || !poly_divisibility_chain(&cert.diag) {
        return false;
    }
    if !(&cert.p * &cert.p_inv).is_identity() || !(&cert.q * &cert.q_inv).is_identity() {
        return false;
    }
    &(&cert.p * m) * &cert.q == cert.d
}

/// Heuristic elimination that got stuck; says nothing about existence.
#[derive(Clone, Debug)]
pub struct ReductionFailure {
    pub state: PolyMatrix,
    pub reason: String,
}

impl fmt::Display for ReductionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "reduction over Z[x] stuck: {}", self.reason)
    }
}

impl std::error::Error for ReductionFailure {}

/// `sign * x * I + c * I - A`.
pub fn x_plus_shift_matrix(a: &IntMatrix, c: &BigInt, sign: i8) -> Result<PolyMatrix> {
    let n = a.require_square()?;
    if sign != 1 && sign != -1 {
        return Err(Error::Malformed(format!("sign must be +1 or -1, got {sign}")));
    }
    let mut m = PolyMatrix::from_int(&a.scale(&BigInt::from(-1)));
    for i in 0..n {
        m[(i, i)] = &m[(i, i)] + &IntPoly::new(vec![c.clone(), BigInt::from(sign)]);
    }
    Ok(m)
}

fn const_divides_all(c: &BigInt, p: &IntPoly) -> bool {
    p.coeffs().iter().all(|k| k.is_multiple_of(c))
}

fn choose_pivot(m: &PolyMatrix, k: usize) -> Option<(usize, usize)> {
    let (r, c) = m.shape();
    let cells = || (k..r).flat_map(move |i| (k..c).map(move |j| (i, j)));
    if let Some(pos) = cells().find(|&ij| m[ij].is_unit()) {
        return Some(pos);
    }
    let dividing_constant = cells().find(|&(i, j)| {
        let e = &m[(i, j)];
        if e.is_zero() || !e.is_constant() {
            return false;
        }
        let c0 = e.constant_term();
        (k..c).all(|jj| const_divides_all(&c0, &m[(i, jj)]))
            && (k..r).all(|ii| const_divides_all(&c0, &m[(ii, j)]))
    });
    if dividing_constant.is_some() {
        return dividing_constant;
    }
    cells()
        .filter(|&ij| !m[ij].is_zero())
        .min_by_key(|&ij| {
            let e = &m[ij];
            (e.degree(), e.leading_coeff().map(|c| c.abs()), ij)
        })
}

/// Greedy Smith reduction over `Z[x]`.
///
/// Pivot preference: a unit, then a constant dividing its row and column,
/// then an entry of least degree. Division only takes the steps that stay
/// in `Z[x]`. Input of the shape `xI - (block companion)` with a divisible
/// chain of blocks goes through [`block_companion_snf`] instead.
pub fn reduce_to_snf_zx(m: &PolyMatrix) -> std::result::Result<PolySnfCertificate, ReductionFailure> {
    if let Some(blocks) = recognize_block_companion(m) {
        if let Ok(cert) = block_companion_snf(&blocks) {
            return Ok(cert);
        }
    }
    let (r, c) = m.shape();
    let dim = r.max(c).max(1);
    let budget = 10 * dim * dim;
    let mut iterations = 0usize;
    let mut t = TrackedPolyMatrix::new(m.clone());
    let fail = |t: &TrackedPolyMatrix, reason: String| ReductionFailure {
        state: t.m.clone(),
        reason,
    };

    for k in 0..r.min(c) {
        loop {
            iterations += 1;
            if iterations > budget {
                return Err(fail(&t, format!("iteration budget {budget} exhausted")));
            }
            let Some((pi, pj)) = choose_pivot(&t.m, k) else {
                break;
            };
            let mut progress = false;
            if pi != k {
                t.swap_rows(pi, k);
                progress = true;
            }
            if pj != k {
                t.swap_cols(pj, k);
                progress = true;
            }
            let pivot = t.m[(k, k)].clone();
            for i in k + 1..r {
                let (q, _) = t.m[(i, k)].reduce_by(&pivot);
                if !q.is_zero() {
                    t.add_row(i, k, &-&q);
                    progress = true;
                }
            }
            for j in k + 1..c {
                let (q, _) = t.m[(k, j)].reduce_by(&pivot);
                if !q.is_zero() {
                    t.add_col(j, k, &-&q);
                    progress = true;
                }
            }
            let cleared = (k + 1..r).all(|i| t.m[(i, k)].is_zero())
                && (k + 1..c).all(|j| t.m[(k, j)].is_zero());
            if cleared {
                let bad = (k + 1..r).find(|&i| (k + 1..c).any(|j| !pivot.divides(&t.m[(i, j)])));
                match bad {
                    None => break,
                    Some(i) => {
                        t.add_row(k, i, &IntPoly::one());
                        progress = true;
                    }
                }
            }
            if !progress {
                return Err(fail(
                    &t,
                    format!("no division step possible at pivot {k} ({pivot})"),
                ));
            }
        }
    }
    for k in 0..r.min(c) {
        if t.m[(k, k)].normalize_sign().1 < 0 {
            t.negate_row(k);
        }
    }
    let cert = PolySnfCertificate::from_tracked(t);
    if !poly_divisibility_chain(&cert.diag) {
        return Err(ReductionFailure {
            state: cert.d,
            reason: "diagonal is not a divisibility chain".into(),
        });
    }
    Ok(cert)
}

/// Recognize `xI - C` with `C` block companion along a divisibility chain.
fn recognize_block_companion(m: &PolyMatrix) -> Option<Vec<CompanionBlock>> {
    let n = m.rows();
    if !m.is_square() || n == 0 {
        return None;
    }
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = &m[(i, j)];
            let c = if i == j {
                if e.degree() != Some(1) || !e.coeff(1).is_one() {
                    return None;
                }
                -e.constant_term()
            } else {
                if !e.is_constant() && !e.is_zero() {
                    return None;
                }
                -e.constant_term()
            };
            a[(i, j)] = c;
        }
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && a[(end, end - 1)].is_one() {
            end += 1;
        }
        let mut coeffs: Vec<BigInt> = (start..end).map(|i| -a[(i, end - 1)].clone()).collect();
        coeffs.push(BigInt::one());
        blocks.push(companion(&IntPoly::new(coeffs)).ok()?);
        start = end;
    }
    let polys: Vec<IntPoly> = blocks.iter().map(|b| b.poly.clone()).collect();
    (block_diagonal(&blocks) == a && poly_divisibility_chain(&polys)).then_some(blocks)
}

/// Certificate for `xI - diag(C_{a_1}, ..., C_{a_k})` with diagonal
/// `(1, ..., 1, a_1, ..., a_k)`, built from an explicit sequence of
/// elementary operations on each block.
pub fn block_companion_snf(blocks: &[CompanionBlock]) -> Result<PolySnfCertificate> {
    for (i, b) in blocks.iter().enumerate() {
        if companion(&b.poly)?.matrix != b.matrix {
            return Err(Error::Malformed(format!("block {i} is not a companion matrix")));
        }
    }
    if let Some(i) = blocks.windows(2).position(|w| !w[0].poly.divides(&w[1].poly)) {
        return Err(Error::ChainViolation(i));
    }
    let a = block_diagonal(blocks);
    let mut t = TrackedPolyMatrix::new(PolyMatrix::x_minus(&a)?);
    let x = IntPoly::x();
    let mut off = 0;
    let mut poly_slots = Vec::with_capacity(blocks.len());
    for b in blocks {
        let d = b.degree();
        let last = off + d - 1;
        for i in (0..d.saturating_sub(1)).rev() {
            t.add_row(off + i, off + i + 1, &x);
        }
        for i in 1..d {
            let f = t.m[(off + i, last)].clone();
            t.add_col(last, off + i - 1, &f);
        }
        for i in 1..d {
            t.negate_row(off + i);
        }
        for i in 0..d - 1 {
            t.swap_rows(off + i, off + i + 1);
        }
        poly_slots.push(last);
        off += d;
    }
    // Simultaneous permutation: unit diagonal entries first, then a_1..a_k.
    let n = off;
    let mut order: Vec<usize> = (0..n).filter(|i| !poly_slots.contains(i)).collect();
    order.extend(&poly_slots);
    // `pos[v]` is the current position of original index v.
    let mut pos: Vec<usize> = (0..n).collect();
    let mut at: Vec<usize> = (0..n).collect();
    for (target, &v) in order.iter().enumerate() {
        let cur = pos[v];
        if cur != target {
            t.swap_rows(cur, target);
            t.swap_cols(cur, target);
            let w = at[target];
            at.swap(cur, target);
            pos[v] = target;
            pos[w] = cur;
        }
    }
    Ok(PolySnfCertificate::from_tracked(t))
}
