//! One rank of the inductive construction: from a rational canonical form
//! of `DU_n` to one of `UD_{n+1}`, and from there to `DU_{n+1}`.
//!
//! With `x` acting as `UD_{n+1} = U_n D_{n+1}`:
//!
//! 1. lift each generator `v_i` to `w_i` with `D_{n+1} w_i = v_i`;
//! 2. `ω' = {x^j w_i}` together with a kernel basis `κ` of `D_{n+1}` is a
//!    basis, and `k̂_i = a_i(x) w_i` lies in the kernel;
//! 3. put the `κ`-coordinates of `k̂_m, ..., k̂_1` in Hermite form and
//!    turn each pivot into 1, shifting `w_i` by kernel vectors where the
//!    pivot is not already a unit;
//! 4. swap each `k̂_i` for `x^{d_i} w_i`, giving cyclic blocks with
//!    annihilators `x a_i(x)` plus leftover kernel vectors.
//!
//! For `r = 1` the generators with `a_i = x - 1` are lifted as `U_n v_i`,
//! kept out of step 3, and paired with leftover kernel vectors.
//!
//! Every claim along the way is checked; a failed check becomes an
//! [`Obstruction`] rather than a wrong answer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::decomposition::{check_rcf, RcfDecomposition};
use crate::linalg::{
    hnf_tracked, is_basis, kernel_basis, lll_reduce, size_reduce, IntMatrix, IntVec, PreimageSolver,
};
use crate::poly::IntPoly;
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObstructionCode {
    /// A pivot shares a prime factor with `a_i(0)`.
    GcdObstruction,
    /// The last pivot is not a unit and no spare kernel row is left.
    RankEqualityObstruction,
    /// The base-case lattice search ran out of budget.
    BaseSearchFailure,
    /// A hypothesis of the construction fails (e.g. a down map is not
    /// surjective).
    HypothesisFailure,
    /// An internal assertion failed.
    ConstructionFailure,
}

impl fmt::Display for ObstructionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ObstructionCode::GcdObstruction => "GCD_OBSTRUCTION",
            ObstructionCode::RankEqualityObstruction => "RANK_EQUALITY_OBSTRUCTION",
            ObstructionCode::BaseSearchFailure => "BASE_SEARCH_FAILURE",
            ObstructionCode::HypothesisFailure => "HYPOTHESIS_FAILURE",
            ObstructionCode::ConstructionFailure => "CONSTRUCTION_FAILURE",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub code: ObstructionCode,
    /// Rank being constructed.
    pub n: usize,
    pub detail: String,
    /// Whether the stuck pivot is `±1` modulo `a_{i0}(0)`, `a_{i0}` the first
    /// annihilator with non-unit constant term. Reported only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remark_congruence: Option<bool>,
}

impl Obstruction {
    pub fn new(code: ObstructionCode, n: usize, detail: impl Into<String>) -> Self {
        Self {
            code,
            n,
            detail: detail.into(),
            remark_congruence: None,
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at rank {}: {}", self.code, self.n, self.detail)
    }
}

impl std::error::Error for Obstruction {}

/// A kernel vector added to a lift during pivot fixing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tweak {
    pub generator: usize,
    pub pivot: usize,
}

/// Working data of one induction step from rank `n` to `n + 1`.
#[derive(Clone, Debug)]
pub struct InductionState {
    pub n: usize,
    pub r: u32,
    /// `UD_{n+1}`, the action of `x`.
    pub x: IntMatrix,
    pub down: IntMatrix,
    /// Annihilators of the `DU_n` decomposition.
    pub annihilators: Vec<IntPoly>,
    pub lifts: Vec<IntVec>,
    /// Generators lifted as eigenvectors (`r = 1`, `a_i = x - 1`).
    pub eigen: Vec<usize>,
    /// The remaining generators, ascending.
    pub active: Vec<usize>,
    pub omega_prime: Vec<IntVec>,
    /// Current kernel basis as columns.
    pub kernel: IntMatrix,
    /// `κ`-coordinates of `k̂` for `active` in reverse order, one per column.
    pub pivots: IntMatrix,
    /// `Δp_n - Δp_{n-1}`, for `r = 1`.
    pub delta: Option<i64>,
    /// `Δp_{n+1} - Δp_n`.
    pub epsilon: i64,
    pub tweaks: Vec<Tweak>,
}

impl InductionState {
    /// The generator whose `k̂` sits in pivot column `col`.
    fn generator_of(&self, col: usize) -> usize {
        self.active[self.active.len() - 1 - col]
    }

    /// `k̂_i = a_i(x) w_i` for the current lifts, in pivot-column order.
    pub fn khat(&self) -> Vec<IntVec> {
        (0..self.active.len())
            .map(|c| {
                let g = self.generator_of(c);
                self.annihilators[g].apply(&self.x, &self.lifts[g])
            })
            .collect()
    }

    /// Rows of the pivot matrix below the triangular block.
    pub fn zero_rows(&self) -> usize {
        self.pivots.rows() - self.active.len()
    }
}

fn fail(n: usize, detail: impl Into<String>) -> Obstruction {
    Obstruction::new(ObstructionCode::ConstructionFailure, n, detail)
}

fn is_eigen_factor(r: u32, a: &IntPoly) -> bool {
    r == 1 && *a == IntPoly::from_i64(&[-1, 1])
}

/// Lifts `w_i` of the generators through `D_{n+1}`; eigen-lifts `U_n v_i`
/// where `r = 1` and `a_i = x - 1`.
pub fn lift_generators(poset: &Poset, n: usize, dec: &RcfDecomposition) -> Result<Vec<IntVec>, Obstruction> {
    let down = poset.down_matrix(n + 1).expect("n + 1 >= 1");
    let up = poset.up_matrix(n);
    let solver = PreimageSolver::new(&down);
    dec.generators
        .iter()
        .zip(&dec.annihilators)
        .map(|(v, a)| {
            if is_eigen_factor(poset.r(), a) {
                return Ok(up.mul_vec(v));
            }
            solver
                .solve(v)
                .map_err(|e| fail(n + 1, e.to_string()))?
                .ok_or_else(|| {
                    Obstruction::new(
                        ObstructionCode::HypothesisFailure,
                        n + 1,
                        format!("generator has no integer preimage under D_{}", n + 1),
                    )
                })
        })
        .collect()
}

/// Assemble `ω'`, `κ` and the Hermite-reduced pivot matrix, checking that
/// `ω' ∪ κ` is a basis and that `ker D_{n+1} ∩ im U_n = 0`.
pub fn build_induction_state(
    poset: &Poset,
    n: usize,
    dec: &RcfDecomposition,
    lifts: Vec<IntVec>,
) -> Result<InductionState, Obstruction> {
    let target = n + 1;
    let r = poset.r();
    let down = poset.down_matrix(target).expect("n + 1 >= 1");
    let up = poset.up_matrix(n);
    let x = &up * &down;
    let (p, q) = down.shape();

    for (i, (w, v)) in lifts.iter().zip(&dec.generators).enumerate() {
        if down.mul_vec(w) != *v {
            return Err(fail(target, format!("lift {i} does not map to its generator")));
        }
    }

    // Entries grow quickly from rank to rank unless the kernel basis is
    // LLL-reduced and each solved lift is taken modulo that kernel.
    let kappa = lll_reduce(&kernel_basis(&down).vectors);
    let lifts: Vec<IntVec> = lifts
        .into_iter()
        .zip(&dec.annihilators)
        .map(|(w, a)| if is_eigen_factor(r, a) { w } else { size_reduce(&kappa, &w) })
        .collect();

    let mut omega_prime = Vec::with_capacity(p);
    for (w, a) in lifts.iter().zip(&dec.annihilators) {
        let mut v = w.clone();
        for j in 0..a.degree().unwrap_or(0) {
            if j > 0 {
                v = x.mul_vec(&v);
            }
            omega_prime.push(v.clone());
        }
    }
    let s = kappa.len();
    let mut all = omega_prime.clone();
    all.extend(kappa.iter().cloned());
    if !is_basis(&all) {
        return Err(fail(target, "ω' ∪ κ is not a basis"));
    }
    if s + p != q {
        return Err(fail(target, "kernel rank is not p_{n+1} - p_n"));
    }
    let kernel = IntMatrix::from_columns(q, &kappa).expect("kernel vectors have length q");
    let joined: Vec<IntVec> = kappa.iter().cloned().chain(up.columns()).collect();
    if IntMatrix::from_columns(q, &joined).expect("same length").rank() != q {
        return Err(fail(target, "ker D meets im U"));
    }

    let (eigen, active): (Vec<usize>, Vec<usize>) =
        (0..dec.annihilators.len()).partition(|&i| is_eigen_factor(r, &dec.annihilators[i]));
    let delta = (r == 1).then(|| poset.delta(n) - if n == 0 { 0 } else { poset.delta(n - 1) });
    let epsilon = poset.delta(target) - poset.delta(n);

    let mut state = InductionState {
        n,
        r,
        x,
        down,
        annihilators: dec.annihilators.clone(),
        lifts,
        eigen,
        active,
        omega_prime,
        kernel,
        pivots: IntMatrix::zeros(s, 0),
        delta,
        epsilon,
        tweaks: Vec::new(),
    };

    let khat = state.khat();
    let solver = PreimageSolver::new(&state.kernel);
    let mut coords = Vec::with_capacity(khat.len());
    for (c, k) in khat.iter().enumerate() {
        if !state.down.mul_vec(k).iter().all(Zero::is_zero) {
            return Err(fail(target, format!("k̂ in column {c} is not in ker D")));
        }
        if !state.x.mul_vec(k).iter().all(Zero::is_zero) {
            return Err(fail(target, format!("x a_i(x) does not kill w_i (column {c})")));
        }
        let y = solver
            .solve(k)
            .map_err(|e| fail(target, e.to_string()))?
            .ok_or_else(|| fail(target, "k̂ outside the span of κ"))?;
        coords.push(y);
    }
    let t = coords.len();
    let c0 = IntMatrix::from_columns(s, &coords).expect("coordinate length s");
    let (form, u_inv) = hnf_tracked(&c0, true);
    if form.rank() != t || form.pivots.iter().enumerate().any(|(i, &(row, col))| row != i || col != i) {
        return Err(fail(target, "k̂ vectors are not independent"));
    }
    let kernel = &state.kernel * &u_inv.expect("inverse requested");
    // Columns past the pivots only need to span the rest of the kernel.
    let mut cols = kernel.columns();
    let rest = lll_reduce(&cols[t..]);
    cols.truncate(t);
    cols.extend(rest);
    state.kernel = IntMatrix::from_columns(q, &cols).expect("kernel vectors have length q");
    state.pivots = form.h;
    Ok(state)
}

fn congruent_to_unit(b: &BigInt, a0: &BigInt) -> bool {
    let m = a0.abs();
    if m.is_one() {
        return true;
    }
    let res = b.mod_floor(&m);
    res.is_one() || res == &m - 1u32
}

/// Turn the diagonal of the pivot matrix into ones, column by column.
///
/// A unit pivot only needs its sign fixed. Otherwise the generator `w_g`
/// of that column is shifted by the next kernel basis vector, which puts
/// `a_g(0)` below the pivot, and an extended Euclid step on the two rows
/// leaves 1 on the diagonal. Entries above each pivot are then cleared.
pub fn pivot_fix(mut st: InductionState) -> Result<InductionState, Obstruction> {
    let target = st.n + 1;
    let t = st.active.len();
    let s = st.pivots.rows();
    let first_nonunit = st.active.first().map(|&i| st.annihilators[i].constant_term());
    for i in 0..t {
        let b = st.pivots[(i, i)].clone();
        if !b.abs().is_one() {
            let g = st.generator_of(i);
            let a0 = st.annihilators[g].constant_term();
            let remark = first_nonunit.as_ref().map(|c| congruent_to_unit(&b, c));
            if !b.gcd(&a0).is_one() {
                return Err(Obstruction {
                    code: ObstructionCode::GcdObstruction,
                    n: target,
                    detail: format!("pivot {} is {b}, sharing a factor with a(0) = {a0}", i + 1),
                    remark_congruence: remark,
                });
            }
            if i + 1 >= s {
                return Err(Obstruction {
                    code: ObstructionCode::RankEqualityObstruction,
                    n: target,
                    detail: format!("pivot {} is {b} and no spare kernel row is left", i + 1),
                    remark_congruence: remark,
                });
            }
            let k = st.kernel.column(i + 1);
            for (w, kv) in st.lifts[g].iter_mut().zip(&k) {
                *w += kv;
            }
            st.pivots[(i + 1, i)] += &a0;
            st.tweaks.push(Tweak { generator: g, pivot: i });
            let e = b.extended_gcd(&a0);
            let (sb, ta) = if e.gcd.is_one() { (e.x, e.y) } else { (-e.x, -e.y) };
            let na0 = -&a0;
            st.pivots.combine_rows(i, i + 1, [[&sb, &ta], [&na0, &b]]);
            let nt = -&ta;
            st.kernel.combine_cols(i, i + 1, [[&b, &nt], [&a0, &sb]]);
        }
        if st.pivots[(i, i)].is_negative() {
            st.pivots.negate_row(i);
            st.kernel.negate_col(i);
        }
        debug_assert!(st.pivots[(i, i)].is_one());
        for h in 0..i {
            let f = st.pivots[(h, i)].clone();
            if !f.is_zero() {
                st.pivots.add_row_multiple(h, i, &-&f);
                st.kernel.add_col_multiple(i, h, &f);
            }
        }
    }
    let khat = st.khat();
    for (c, k) in khat.iter().enumerate() {
        if st.kernel.column(c) != *k {
            return Err(fail(target, format!("kernel column {c} is not the recomputed k̂")));
        }
    }
    Ok(st)
}

/// Result of one induction step.
#[derive(Clone, Debug)]
pub struct InductionOutcome {
    /// Decomposition for `UD_{n+1}`.
    pub ud: RcfDecomposition,
    /// Decomposition for `DU_{n+1}`, same generators.
    pub du: RcfDecomposition,
    pub state: InductionState,
}

/// From a verified decomposition of `DU_n` to one of `DU_{n+1}`.
pub fn induction_step(poset: &Poset, n: usize, dec: &RcfDecomposition) -> Result<InductionOutcome, Obstruction> {
    let target = n + 1;
    let lifts = lift_generators(poset, n, dec)?;
    let state = build_induction_state(poset, n, dec, lifts)?;
    let st = pivot_fix(state)?;

    let t = st.active.len();
    let leftovers: Vec<IntVec> = (t..st.kernel.cols()).map(|c| st.kernel.column(c)).collect();
    let x_poly = IntPoly::x();
    let eig_poly = IntPoly::from_i64(&[-1, 1]);
    let pairs = leftovers.len().min(st.eigen.len());

    let mut gens: Vec<IntVec> = Vec::new();
    let mut anns: Vec<IntPoly> = Vec::new();
    for k in &leftovers[pairs..] {
        gens.push(k.clone());
        anns.push(x_poly.clone());
    }
    // Eigen-lifts w_1..w_δ; w_δ pairs with the first leftover, w_{δ-1}
    // with the second, and so on.
    let delta = st.eigen.len();
    for &e in &st.eigen[..delta - pairs] {
        gens.push(st.lifts[e].clone());
        anns.push(eig_poly.clone());
    }
    for (j, k) in leftovers[..pairs].iter().enumerate() {
        let w = &st.lifts[st.eigen[delta - 1 - j]];
        gens.push(w.iter().zip(k).map(|(a, b)| a + b).collect());
        anns.push(&x_poly * &eig_poly);
    }
    for &i in &st.active {
        gens.push(st.lifts[i].clone());
        anns.push(&x_poly * &st.annihilators[i]);
    }

    let ud = RcfDecomposition::from_generators(st.x.clone(), gens.clone(), anns.clone());
    check_rcf(&ud).map_err(|e| fail(target, format!("UD decomposition: {e}")))?;
    let r = BigInt::from(st.r);
    let du_anns: Vec<IntPoly> = anns.iter().map(|a| a.shift(&-&r)).collect();
    let du = RcfDecomposition::from_generators(poset.du_matrix(target), gens, du_anns);
    check_rcf(&du).map_err(|e| fail(target, format!("DU decomposition: {e}")))?;
    Ok(InductionOutcome { ud, du, state: st })
}
