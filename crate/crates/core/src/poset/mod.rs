//! Ranks, covers and operator matrices of Young's lattice, the
//! Young–Fibonacci lattice and their Cartesian products.

mod element;
mod spec;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use element::PosetElement;
pub use spec::{RankedPosetSpec, SPEC_GRAMMAR};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The elements of one rank in canonical order. Position in `elements` is
/// the coordinate index in `Z^{p_n}`.
#[derive(Clone, Debug, Serialize)]
pub struct RankData {
    pub n: usize,
    pub elements: Vec<PosetElement>,
    #[serde(skip)]
    index: HashMap<PosetElement, usize>,
}

impl RankData {
    fn new(n: usize, elements: Vec<PosetElement>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Self { n, elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &PosetElement) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// A differential poset with memoized ranks.
///
/// Ranks are built bottom-up: rank `n + 1` is the deduplicated set of
/// up-covers of rank `n`, sorted canonically. Young partitions are in
/// reverse lexicographic order, Young–Fibonacci words by decreasing length
/// and then lexicographically with `1 < 2`, and product tuples
/// lexicographically on the (rank, index) pairs of their coordinates.
#[derive(Debug)]
pub struct Poset {
    spec: RankedPosetSpec,
    components: Vec<Poset>,
    ranks: RwLock<Vec<Arc<RankData>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SortKey {
    Young(std::cmp::Reverse<Vec<u32>>),
    Fib(std::cmp::Reverse<usize>, Vec<u8>),
    Product(Vec<(usize, usize)>),
}

impl Poset {
    pub fn new(spec: RankedPosetSpec) -> Self {
        let components = match &spec {
            RankedPosetSpec::Product(fs) => fs.iter().cloned().map(Poset::new).collect(),
            _ => Vec::new(),
        };
        let bottom = RankData::new(0, vec![PosetElement::bottom(&spec)]);
        Self {
            spec,
            components,
            ranks: RwLock::new(vec![Arc::new(bottom)]),
        }
    }

    pub fn spec(&self) -> &RankedPosetSpec {
        &self.spec
    }

    pub fn r(&self) -> u32 {
        self.spec.r()
    }

    fn sort_key(&self, e: &PosetElement) -> SortKey {
        match e {
            PosetElement::Partition(p) => SortKey::Young(std::cmp::Reverse(p.clone())),
            PosetElement::Word(w) => SortKey::Fib(std::cmp::Reverse(w.len()), w.clone()),
            PosetElement::Tuple(t) => SortKey::Product(
                t.iter()
                    .zip(&self.components)
                    .map(|(c, poset)| {
                        let k = c.rank();
                        let idx = poset.rank(k).index_of(c).expect("component element in its rank");
                        (k, idx)
                    })
                    .collect(),
            ),
        }
    }

    /// Rank `n`, computing and caching lower ranks as needed.
    pub fn rank(&self, n: usize) -> Arc<RankData> {
        if let Some(r) = self.ranks.read().expect("rank memo poisoned").get(n) {
            return Arc::clone(r);
        }
        let mut memo = self.ranks.write().expect("rank memo poisoned");
        while memo.len() <= n {
            let prev = memo.last().expect("rank 0 always present");
            let mut next: Vec<PosetElement> =
                prev.elements.iter().flat_map(PosetElement::covers_unchecked).collect();
            next.sort();
            next.dedup();
            let mut keyed: Vec<(SortKey, PosetElement)> =
                next.into_iter().map(|e| (self.sort_key(&e), e)).collect();
            keyed.sort();
            let k = memo.len();
            memo.push(Arc::new(RankData::new(k, keyed.into_iter().map(|(_, e)| e).collect())));
        }
        Arc::clone(&memo[n])
    }

    /// All elements of rank `n` in canonical order.
    pub fn rank_elements(&self, n: usize) -> RankData {
        (*self.rank(n)).clone()
    }

    /// `p_n`.
    pub fn rank_size(&self, n: usize) -> usize {
        self.rank(n).len()
    }

    /// `p_n - p_{n-1}` with `p_{-1} = 0`.
    pub fn delta(&self, n: usize) -> i64 {
        let below = if n == 0 { 0 } else { self.rank_size(n - 1) };
        self.rank_size(n) as i64 - below as i64
    }

    /// Up-covers of a valid element, in canonical order of the next rank.
    pub fn covers_up(&self, e: &PosetElement) -> Result<Vec<PosetElement>> {
        e.validate(&self.spec)?;
        let next = self.rank(e.rank() + 1);
        let mut covers = e.covers_unchecked();
        covers.sort_by_key(|c| next.index_of(c).expect("cover lies in the next rank"));
        Ok(covers)
    }

    /// `U_n`, of shape `p_{n+1} x p_n`.
    pub fn up_matrix(&self, n: usize) -> IntMatrix {
        let lower = self.rank(n);
        let upper = self.rank(n + 1);
        let mut m = IntMatrix::zeros(upper.len(), lower.len());
        for (j, e) in lower.elements.iter().enumerate() {
            for c in e.covers_unchecked() {
                let i = upper.index_of(&c).expect("cover lies in the next rank");
                m[(i, j)] = BigInt::one();
            }
        }
        m
    }

    /// `D_n`, of shape `p_{n-1} x p_n`; there is no down map out of rank 0.
    pub fn down_matrix(&self, n: usize) -> Result<IntMatrix> {
        if n == 0 {
            return Err(Error::NoDownMap);
        }
        Ok(self.up_matrix(n - 1).transpose())
    }

    /// `DU_n = D_{n+1} U_n`.
    pub fn du_matrix(&self, n: usize) -> IntMatrix {
        let u = self.up_matrix(n);
        &u.transpose() * &u
    }

    /// `UD_n = U_{n-1} D_n`; the zero `p_0 x p_0` matrix at `n = 0`.
    pub fn ud_matrix(&self, n: usize) -> IntMatrix {
        if n == 0 {
            let p0 = self.rank_size(0);
            return IntMatrix::zeros(p0, p0);
        }
        let u = self.up_matrix(n - 1);
        &u * &u.transpose()
    }

    /// Check `DU_n - UD_n = rI` for `0 <= n <= n_max`, stopping at the
    /// first violation.
    pub fn verify_axioms(&self, n_max: usize) -> AxiomReport {
        let r = BigInt::from(self.r());
        let mut report = AxiomReport {
            spec: self.spec.clone(),
            r: self.r(),
            n_max,
            ranks_checked: 0,
            passed: true,
            violation: None,
        };
        for n in 0..=n_max {
            let du = self.du_matrix(n);
            let ud = self.ud_matrix(n);
            let p = du.rows();
            for i in 0..p {
                for j in 0..p {
                    let expected = if i == j { r.clone() } else { BigInt::zero() };
                    let actual = &du[(i, j)] - &ud[(i, j)];
                    if actual != expected {
                        report.passed = false;
                        report.violation = Some(AxiomViolation {
                            n,
                            row: i,
                            col: j,
                            expected: expected.to_string(),
                            actual: actual.to_string(),
                        });
                        return report;
                    }
                }
            }
            report.ranks_checked = n + 1;
        }
        report
    }
}

/// Outcome of [`Poset::verify_axioms`].
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub spec: RankedPosetSpec,
    pub r: u32,
    pub n_max: usize,
    pub ranks_checked: usize,
    pub passed: bool,
    pub violation: Option<AxiomViolation>,
}

/// First entry where `DU_n - UD_n` differs from `rI`.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub n: usize,
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}
