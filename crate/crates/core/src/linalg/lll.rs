//! Integral LLL reduction (all Gram-Schmidt data kept as exact integers).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{axpy, IntVec};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Nearest integer to `a / b` for `b > 0`, ties rounded down.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a: BigInt = a * 2u32 + b;
    two_a.div_floor(&(b * 2))
}

/// `d[i]` is the Gram determinant of the first `i` vectors and
/// `lam[k][j] = d[j+1] * mu_{k,j}`.
struct Lll {
    b: Vec<IntVec>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl Lll {
    fn new(b: Vec<IntVec>) -> Self {
        let n = b.len();
        Self {
            b,
            d: vec![BigInt::one(); n + 1],
            lam: (0..n).map(|k| vec![BigInt::zero(); k]).collect(),
        }
    }

    /// Fill row `k` of `lam` and `d[k+1]` from rows `0..k`.
    fn gram_row(&mut self, k: usize) {
        for j in 0..=k {
            let mut u = dot(&self.b[k], &self.b[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i];
            }
            if j < k {
                self.lam[k][j] = u;
            } else {
                self.d[k + 1] = u;
            }
        }
    }

    fn reduce(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        if (&self.lam[k][l] * 2u32).abs() <= dl {
            return;
        }
        let q = round_div(&self.lam[k][l], &dl);
        let src = self.b[l].clone();
        axpy(&mut self.b[k], &-&q, &src);
        self.lam[k][l] -= &q * &dl;
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let (dkm2, dkm1, dk) = (&self.d[k - 1], &self.d[k], &self.d[k + 1]);
        let bb = (dkm2 * dk + &lam * &lam) / dkm1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (dk * &self.lam[i][k - 1] - &lam * &t) / dkm1;
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / dk;
        }
        self.d[k] = bb;
    }

    fn run(&mut self) {
        let n = self.b.len();
        if n == 0 {
            return;
        }
        self.gram_row(0);
        let (mut k, mut kmax) = (1, 0);
        while k < n {
            if k > kmax {
                kmax = k;
                self.gram_row(k);
            }
            self.reduce(k, k - 1);
            let lhs = &self.d[k + 1] * &self.d[k - 1] * 4u32;
            let rhs = &self.d[k] * &self.d[k] * 3u32 - &self.lam[k][k - 1] * &self.lam[k][k - 1] * 4u32;
            if lhs < rhs {
                self.swap(k, kmax);
                k = (k - 1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    self.reduce(k, l);
                }
                k += 1;
            }
        }
    }
}

/// LLL-reduced basis (`delta = 3/4`) of the lattice spanned by linearly
/// independent `vectors`.
pub fn lll_reduce(vectors: &[IntVec]) -> Vec<IntVec> {
    let mut state = Lll::new(vectors.to_vec());
    state.run();
    state.b
}

/// Size-reduce `v` against the independent `basis`: subtract the
/// nearest-plane combination so every Gram-Schmidt coefficient of the
/// result lies in `[-1/2, 1/2]`.
pub fn size_reduce(basis: &[IntVec], v: &[BigInt]) -> IntVec {
    let n = basis.len();
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    let mut state = Lll::new(all);
    for k in 0..=n {
        state.gram_row(k);
    }
    for l in (0..n).rev() {
        state.reduce(n, l);
    }
    state.b.pop().expect("v was pushed")
}
