//! Direct search for a rational canonical form over `Z`.
//!
//! The rational invariant factors are read off from Jordan block sizes
//! (the spectrum must be integral). Every integer `T` with `A T = T R`,
//! `R` the target block companion matrix, lies in the kernel of a
//! `p^2 x p^2` integer map; the search walks that lattice looking for a
//! member with determinant `±1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decomposition::{check_rcf, RcfDecomposition};
use crate::linalg::{char_poly, kernel_basis, IntMatrix, IntVec};
use crate::poly::{block_diagonal, companion, IntPoly};

/// Limits of the lattice search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest coefficient magnitude in the deterministic sweep.
    pub sweep_bound: i64,
    /// Cap on the number of sweep candidates.
    pub sweep_cap: usize,
    /// Random draws after the sweep.
    pub random_draws: usize,
    /// Coefficient magnitude of random draws.
    pub random_bound: i64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            sweep_bound: 3,
            sweep_cap: 50_000,
            random_draws: 10_000,
            random_bound: 3,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseCaseError {
    NotSquare,
    /// The characteristic polynomial does not split over `Z`.
    NonIntegerSpectrum(IntPoly),
    /// No unimodular intertwiner found within the budget. Inconclusive.
    SearchFailure {
        lattice_dim: usize,
        candidates: usize,
    },
}

impl fmt::Display for BaseCaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseCaseError::NotSquare => f.write_str("matrix is not square"),
            BaseCaseError::NonIntegerSpectrum(p) => {
                write!(f, "characteristic polynomial {p} has non-integer roots")
            }
            BaseCaseError::SearchFailure { lattice_dim, candidates } => write!(
                f,
                "no unimodular basis among {candidates} candidates in a lattice of rank {lattice_dim}"
            ),
        }
    }
}

impl std::error::Error for BaseCaseError {}

/// Integer roots with multiplicity, if the polynomial splits over `Z`.
pub fn integer_roots(p: &IntPoly) -> Option<BTreeMap<BigInt, usize>> {
    let mut rest = p.clone();
    let mut roots = BTreeMap::new();
    let mut d = rest.degree()?;
    // Fujiwara-style bound for a monic polynomial: every root has
    // |z| <= 2 max_k |c_{d-k}|^{1/k}.
    if !rest.is_monic() {
        return None;
    }
    let bound = (1..=d)
        .map(|k| rest.coeff(d - k).abs().nth_root(k as u32) + 1)
        .max()
        .unwrap_or_default()
        * 2;
    while d > 0 {
        let c0 = rest.constant_term();
        let root = if c0.is_zero() {
            Some(BigInt::zero())
        } else {
            small_divisors(&c0.abs(), &bound)
                .into_iter()
                .flat_map(|q| [q.clone(), -q])
                .find(|q| rest.eval(q).is_zero())
        }?;
        rest = rest.div_exact(&IntPoly::linear(&root)).expect("root divides");
        *roots.entry(root).or_insert(0) += 1;
        d -= 1;
    }
    Some(roots)
}

fn small_divisors(n: &BigInt, bound: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut q = BigInt::one();
    while &q <= bound && &q <= n {
        if n.is_multiple_of(&q) {
            out.push(q.clone());
        }
        q += 1;
    }
    out
}

/// Rational invariant factors of `A` (integral spectrum required), from the
/// Jordan block sizes `rank (A - λ)^{k-1} - rank (A - λ)^k`.
pub fn rational_invariant_factors(a: &IntMatrix) -> Result<Vec<IntPoly>, BaseCaseError> {
    let n = a.require_square().map_err(|_| BaseCaseError::NotSquare)?;
    let chi = char_poly(a).expect("square");
    let roots = integer_roots(&chi).ok_or_else(|| BaseCaseError::NonIntegerSpectrum(chi.clone()))?;
    // Block sizes per eigenvalue, largest first.
    let mut sizes: Vec<(BigInt, Vec<usize>)> = Vec::new();
    for (lambda, mult) in roots {
        let shifted = a.try_sub(&IntMatrix::scalar(n, &lambda)).expect("same shape");
        let mut ranks = vec![n];
        let mut power = IntMatrix::identity(n);
        while *ranks.last().unwrap() > n - mult {
            power = &power * &shifted;
            ranks.push(power.rank());
        }
        // at_least[k] = number of blocks of size >= k + 1
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut blocks = Vec::new();
        for (k, &c) in at_least.iter().enumerate() {
            let bigger = at_least.get(k + 1).copied().unwrap_or(0);
            blocks.extend(std::iter::repeat_n(k + 1, c - bigger));
        }
        blocks.sort_unstable_by(|x, y| y.cmp(x));
        sizes.push((lambda, blocks));
    }
    let m = sizes.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
    // a_m gets the largest block of each eigenvalue, a_{m-1} the next, ...
    let mut factors: Vec<IntPoly> = (0..m)
        .map(|slot| {
            let roots = sizes
                .iter()
                .filter_map(|(l, b)| b.get(slot).map(|&s| (l, s)));
            IntPoly::from_roots(roots)
        })
        .collect();
    factors.reverse();
    Ok(factors)
}

/// The linear map `T -> A T - T R` on row-major `vec(T)`.
fn intertwiner_map(a: &IntMatrix, r: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut l = IntMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                if !a[(i, k)].is_zero() {
                    l[(row, k * n + j)] += &a[(i, k)];
                }
                if !r[(k, j)].is_zero() {
                    l[(row, i * n + k)] -= &r[(k, j)];
                }
            }
        }
    }
    l
}

fn combine(basis: &[IntVec], coeffs: &[i64], n: usize) -> IntMatrix {
    let mut v = vec![BigInt::zero(); n * n];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            crate::linalg::axpy(&mut v, &BigInt::from(c), b);
        }
    }
    IntMatrix::new(n, n, v).expect("n*n entries")
}

/// Coefficient vectors of max-norm exactly `r`, in odometer order.
fn shell(dim: usize, r: i64, cap: usize, mut visit: impl FnMut(&[i64]) -> bool) -> usize {
    let mut c = vec![-r; dim];
    let mut seen = 0;
    loop {
        if c.iter().any(|x| x.abs() == r) {
            seen += 1;
            if visit(&c) || seen >= cap {
                return seen;
            }
        }
        let mut k = 0;
        loop {
            if k == dim {
                return seen;
            }
            if c[k] < r {
                c[k] += 1;
                break;
            }
            c[k] = -r;
            k += 1;
        }
    }
}

fn decomposition_from_basis(a: &IntMatrix, t: IntMatrix, factors: Vec<IntPoly>) -> RcfDecomposition {
    let mut generators = Vec::with_capacity(factors.len());
    let mut start = 0;
    for f in &factors {
        generators.push(t.column(start));
        start += f.degree().unwrap_or(0);
    }
    RcfDecomposition {
        operator: a.clone(),
        generators,
        annihilators: factors,
        basis: t,
    }
}

/// Find a rational canonical form over `Z` by lattice search.
///
/// Tries, in order: the identity when `A` already is the block companion
/// matrix; for a single block, Krylov bases of unit vectors; a sweep of the
/// intertwiner lattice by increasing coefficient bound; random lattice
/// points. Every returned decomposition has passed [`check_rcf`].
pub fn rcf_base_case(a: &IntMatrix, config: &SearchConfig) -> Result<RcfDecomposition, BaseCaseError> {
    let n = a.require_square().map_err(|_| BaseCaseError::NotSquare)?;
    let factors = rational_invariant_factors(a)?;
    let blocks: Vec<_> = factors.iter().map(|f| companion(f).expect("monic")).collect();
    let r = block_diagonal(&blocks);
    let accept = |t: IntMatrix| {
        let dec = decomposition_from_basis(a, t, factors.clone());
        check_rcf(&dec).is_ok().then_some(dec)
    };

    if a == &r {
        if let Some(dec) = accept(IntMatrix::identity(n)) {
            return Ok(dec);
        }
    }
    if factors.len() == 1 {
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let dec = RcfDecomposition::from_generators(a.clone(), vec![e], factors.clone());
            if dec.basis.is_unimodular() && check_rcf(&dec).is_ok() {
                return Ok(dec);
            }
        }
    }

    let lattice = kernel_basis(&intertwiner_map(a, &r)).vectors;
    let dim = lattice.len();
    let mut found = None;
    let mut candidates = 0;
    for radius in 1..=config.sweep_bound {
        let cap = config.sweep_cap.saturating_sub(candidates);
        if cap == 0 {
            break;
        }
        candidates += shell(dim, radius, cap, |c| {
            let t = combine(&lattice, c, n);
            if t.is_unimodular() {
                found = accept(t);
            }
            found.is_some()
        });
        if let Some(dec) = found {
            return Ok(dec);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_draws {
        let c: Vec<i64> = (0..dim)
            .map(|_| rng.gen_range(-config.random_bound..=config.random_bound))
            .collect();
        candidates += 1;
        let t = combine(&lattice, &c, n);
        if t.is_unimodular() {
            if let Some(dec) = accept(t) {
                return Ok(dec);
            }
        }
    }
    Err(BaseCaseError::SearchFailure {
        lattice_dim: dim,
        candidates,
    })
}
