//! Closed-form predictions for `DU_n` and checks of the rank-size
//! hypotheses used by the inductive construction.
//!
//! The spectrum is known in closed form: `DU_n` has eigenvalue
//! `r(i+1)` with multiplicity `Δp_{n-i}` and `UD_n` has eigenvalue `ri`
//! with the same multiplicity. Grouping the eigenvalues by multiplicity
//! threshold gives the invariant factors `a_1 | ... | a_m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::linalg::{char_poly, ds, has_free_cokernel, is_surjective_over_z};
use crate::poly::{poly_divisibility_chain, IntPoly};
use crate::poset::Poset;

/// Characteristic polynomials of `DU_n` and `UD_n` as root multisets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumPrediction {
    pub n: usize,
    /// `(root, multiplicity)`, zero multiplicities omitted.
    pub ch_du: Vec<(i64, usize)>,
    pub ch_ud: Vec<(i64, usize)>,
}

fn expand(roots: &[(i64, usize)]) -> IntPoly {
    let big: Vec<(BigInt, usize)> = roots.iter().map(|&(r, k)| (BigInt::from(r), k)).collect();
    IntPoly::from_roots(big.iter().map(|(r, k)| (r, *k)))
}

impl SpectrumPrediction {
    pub fn ch_du_poly(&self) -> IntPoly {
        expand(&self.ch_du)
    }

    pub fn ch_ud_poly(&self) -> IntPoly {
        expand(&self.ch_ud)
    }
}

/// The predicted invariant factors of `xI - DU_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFactorPrediction {
    pub n: usize,
    pub m: usize,
    pub factors: Vec<IntPoly>,
}

fn deltas(poset: &Poset, n: usize) -> Vec<usize> {
    (0..=n)
        .map(|j| usize::try_from(poset.delta(j)).expect("rank sizes are weakly increasing"))
        .collect()
}

pub fn predicted_char_polys(poset: &Poset, n: usize) -> SpectrumPrediction {
    let r = i64::from(poset.r());
    let d = deltas(poset, n);
    let mut ch_du = Vec::new();
    let mut ch_ud = Vec::new();
    for i in 0..=n {
        let k = d[n - i];
        if k > 0 {
            ch_du.push((r * (i as i64 + 1), k));
            ch_ud.push((r * i as i64, k));
        }
    }
    SpectrumPrediction { n, ch_du, ch_ud }
}

/// `m = max Δp_j` over `0 <= j <= n`, and `a_i` the product of `x - rj`
/// over `1 <= j <= n+1` with `Δp_{n+1-j} >= m - i + 1`.
///
/// Panics if the result is not a divisibility chain whose product is the
/// predicted characteristic polynomial; both hold by construction.
pub fn predicted_invariant_factors(poset: &Poset, n: usize) -> InvariantFactorPrediction {
    let r = i64::from(poset.r());
    let d = deltas(poset, n);
    let m = *d.iter().max().expect("rank 0 exists");
    let factors: Vec<IntPoly> = (1..=m)
        .map(|i| {
            let roots: Vec<(i64, usize)> = (1..=n + 1)
                .filter(|&j| d[n + 1 - j] + i > m)
                .map(|j| (r * j as i64, 1))
                .collect();
            expand(&roots)
        })
        .collect();
    assert!(poly_divisibility_chain(&factors));
    let product = factors.iter().fold(IntPoly::one(), |acc, a| &acc * a);
    assert_eq!(product, predicted_char_polys(poset, n).ch_du_poly());
    InvariantFactorPrediction { n, m, factors }
}

/// `(1, ..., 1, a_1, ..., a_m)` of length `p_n`, for `xI - DU_n`.
pub fn predicted_snf_diagonal(poset: &Poset, n: usize) -> Vec<IntPoly> {
    let pred = predicted_invariant_factors(poset, n);
    let p = poset.rank_size(n);
    let mut out = vec![IntPoly::one(); p - pred.m];
    out.extend(pred.factors);
    out
}

/// The same prediction for `DU_n + xI`: each entry `e(x)` becomes
/// `±e(-x)` with positive leading coefficient.
pub fn predicted_snf_diagonal_plus(poset: &Poset, n: usize) -> Vec<IntPoly> {
    predicted_snf_diagonal(poset, n)
        .iter()
        .map(|e| e.negate_var().normalize_sign().0)
        .collect()
}

/// One rank of [`check_down_surjectivity`].
#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityEntry {
    pub n: usize,
    pub down_surjective: bool,
    pub up_free_cokernel: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub n_max: usize,
    pub entries: Vec<SurjectivityEntry>,
    /// Largest `N` with `D_1, ..., D_N` all surjective.
    pub surjective_up_to: usize,
    /// Whether the two equivalent tests agreed on every rank.
    pub consistent: bool,
}

impl SurjectivityReport {
    pub fn all_surjective(&self) -> bool {
        self.consistent && self.entries.iter().all(|e| e.down_surjective)
    }
}

/// For `1 <= n <= n_max + 1`: is `D_n` onto `Z^{p_{n-1}}`, and does
/// `U_{n-1}` have free cokernel? The two are equivalent.
pub fn check_down_surjectivity(poset: &Poset, n_max: usize) -> SurjectivityReport {
    let mut entries = Vec::new();
    let mut surjective_up_to = 0;
    let mut prefix = true;
    for n in 1..=n_max + 1 {
        let down = poset.down_matrix(n).expect("n >= 1");
        let e = SurjectivityEntry {
            n,
            down_surjective: is_surjective_over_z(&down),
            up_free_cokernel: has_free_cokernel(&poset.up_matrix(n - 1)),
        };
        prefix &= e.down_surjective;
        if prefix {
            surjective_up_to = n;
        }
        entries.push(e);
    }
    let consistent = entries.iter().all(|e| e.down_surjective == e.up_free_cokernel);
    SurjectivityReport {
        n_max,
        entries,
        surjective_up_to,
        consistent,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankInequalityReport {
    pub l: usize,
    pub n_max: usize,
    /// `1` when `r = 1`, else `0`.
    pub delta_r1: usize,
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// `Δp_n >= Δp_{n-1-δ} + 1` for `l+1 <= n <= n_max`, where `δ = 1` iff
/// `r = 1`.
pub fn check_rank_inequality(poset: &Poset, l: usize, n_max: usize) -> RankInequalityReport {
    let delta_r1 = usize::from(poset.r() == 1);
    let d = |k: isize| if k < 0 { 0 } else { poset.delta(k as usize) };
    let first_failure = (l + 1..=n_max).find(|&n| {
        let n = n as isize;
        d(n) < d(n - 1 - delta_r1 as isize) + 1
    });
    RankInequalityReport {
        l,
        n_max,
        delta_r1,
        holds: first_failure.is_none(),
        first_failure,
    }
}

/// Partitions of `n` with every part at least 2.
pub fn partitions_without_ones(n: usize) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in 2..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

/// Fibonacci numbers indexed so that `f_0 = f_1 = 1`; with this indexing
/// `Δp_n = f_{n-2}` on the Young–Fibonacci lattice (`Δp_2 = 1`,
/// `Δp_3 = 1`, `Δp_4 = 2`).
pub fn fibonacci(k: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

#[derive(Clone, Debug, Serialize)]
pub struct AuxEntry {
    pub n: usize,
    pub computed: u64,
    pub expected: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuxReport {
    pub identity: String,
    pub entries: Vec<AuxEntry>,
    pub passed: bool,
}

/// Independent checks on rank sizes: `Δp_n` against partitions with no
/// part 1 for Young's lattice, against Fibonacci numbers for the
/// Young–Fibonacci lattice, and the convolution `pq_n = Σ q_{n-i} p_i`
/// for products (taking the first factor against the rest).
pub fn auxiliary_combinatorial_checks(poset: &Poset, n_max: usize) -> AuxReport {
    use crate::poset::RankedPosetSpec as S;
    let size = |n: usize| poset.rank_size(n) as u64;
    let (identity, entries): (&str, Vec<AuxEntry>) = match poset.spec() {
        S::Young => (
            "delta p_n = #partitions of n without part 1",
            (0..=n_max)
                .map(|n| (n, poset.delta(n) as u64, partitions_without_ones(n)))
                .map(|(n, c, e)| AuxEntry { n, computed: c, expected: e, ok: c == e })
                .collect(),
        ),
        S::YoungFib => (
            "delta p_n = f_(n-2), f_0 = f_1 = 1",
            (2..=n_max)
                .map(|n| (n, poset.delta(n) as u64, fibonacci(n - 2)))
                .map(|(n, c, e)| AuxEntry { n, computed: c, expected: e, ok: c == e })
                .collect(),
        ),
        S::Product(fs) => {
            let first = Poset::new(fs[0].clone());
            let rest = Poset::new(crate::poset::RankedPosetSpec::product(fs[1..].to_vec()).expect("non-empty"));
            (
                "pq_n = sum_i q_(n-i) p_i",
                (0..=n_max)
                    .map(|n| {
                        let e: u64 = (0..=n)
                            .map(|i| rest.rank_size(n - i) as u64 * first.rank_size(i) as u64)
                            .sum();
                        (n, size(n), e)
                    })
                    .map(|(n, c, e)| AuxEntry { n, computed: c, expected: e, ok: c == e })
                    .collect(),
            )
        }
    };
    let passed = entries.iter().all(|e| e.ok);
    AuxReport {
        identity: identity.into(),
        entries,
        passed,
    }
}

/// Pass/fail verdict in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Per-rank prediction record with consistency checks against the actual
/// operator.
#[derive(Clone, Debug, Serialize)]
pub struct PredictionRecord {
    pub n: usize,
    pub p_n: usize,
    pub delta: i64,
    pub m: usize,
    pub factors: Vec<IntPoly>,
    pub checks: BTreeMap<&'static str, Verdict>,
}

impl PredictionRecord {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|v| *v == Verdict::Pass)
    }
}

/// Compare the predictions at rank `n` with `DU_n` and `UD_n`: exact
/// characteristic polynomials and the integer Smith form of `DU_n`, whose
/// non-unit entries must be `|a_i(0)|`.
pub fn predict_record(poset: &Poset, n: usize) -> PredictionRecord {
    let spectrum = predicted_char_polys(poset, n);
    let pred = predicted_invariant_factors(poset, n);
    let du = poset.du_matrix(n);
    let ud = poset.ud_matrix(n);
    let mut checks = BTreeMap::new();
    checks.insert(
        "char_poly_du",
        (char_poly(&du).expect("square") == spectrum.ch_du_poly()).into(),
    );
    checks.insert(
        "char_poly_ud",
        (char_poly(&ud).expect("square") == spectrum.ch_ud_poly()).into(),
    );
    let mut expected_ds = vec![BigInt::from(1); du.rows() - pred.m];
    expected_ds.extend(pred.factors.iter().map(|a| num_traits::Signed::abs(&a.constant_term())));
    checks.insert("ds_du", (ds(&du) == expected_ds).into());
    PredictionRecord {
        n,
        p_n: poset.rank_size(n),
        delta: poset.delta(n),
        m: pred.m,
        factors: pred.factors,
        checks,
    }
}
