//! Exact characteristic polynomials.
//!
//! [`char_poly`] reduces the matrix to Hessenberg form modulo a set of
//! 62-bit primes and recombines the coefficients by CRT. The prime set is
//! sized from a Hadamard-type bound, so the result is exact, not
//! probabilistic. [`char_poly_berkowitz`] is the division-free `O(n^4)`
//! reference used to cross-check it on small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::Result;
use crate::poly::IntPoly;

/// `det(xI - A)`, monic of degree `n`.
pub fn char_poly(a: &IntMatrix) -> Result<IntPoly> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let bound = coefficient_bound(a);
    let target = &bound * 2u32 + 1u32;

    let mut modulus = BigInt::one();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for p in Primes::new() {
        let residues = char_poly_mod(a, p);
        let pb = BigInt::from(p);
        if modulus.is_one() {
            coeffs = residues.iter().map(|&r| BigInt::from(r)).collect();
        } else {
            // x = c + M * ((r - c) * M^{-1} mod p)
            let m_inv = BigInt::from(inv_mod((&modulus % &pb).to_u64().unwrap(), p));
            for (c, &r) in coeffs.iter_mut().zip(&residues) {
                let diff = (BigInt::from(r) - &*c).mod_floor(&pb);
                let t = (diff * &m_inv).mod_floor(&pb);
                *c += &modulus * t;
            }
        }
        modulus *= pb;
        if modulus > target {
            break;
        }
    }
    let half = &modulus >> 1u32;
    for c in coeffs.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Bound on every coefficient of `det(xI - A)`: a coefficient is a signed
/// sum of `C(n,k)` principal minors of order `n-k`, each at most `B^(n-k)`
/// by Hadamard with `B` the largest column norm, and `sum C(n,k) B^(n-k)`
/// is `(B+1)^n`.
fn coefficient_bound(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    let max_sq = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| &a[(i, j)] * &a[(i, j)])
                .fold(BigInt::zero(), |s, v| s + v)
        })
        .max()
        .unwrap_or_else(BigInt::zero);
    let b = max_sq.sqrt() + 1u32;
    num_traits::pow(b + 1u32, n)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Self { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

/// Characteristic polynomial modulo `p` via Hessenberg reduction,
/// coefficients lowest degree first.
fn char_poly_mod(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let pb = BigInt::from(p);
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|v| v.mod_floor(&pb).to_u64().unwrap())
                .collect()
        })
        .collect();
    let sub = |x: u64, y: u64| if x >= y { x - y } else { x + p - y };
    let add = |x: u64, y: u64| {
        let s = x + y;
        if s >= p {
            s - p
        } else {
            s
        }
    };

    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for k in j + 2..n {
            let u = mul_mod(h[k][j], inv, p);
            if u == 0 {
                continue;
            }
            let pivot_row = h[j + 1].clone();
            for (c, pv) in h[k].iter_mut().zip(&pivot_row) {
                *c = sub(*c, mul_mod(u, *pv, p));
            }
            for row in h.iter_mut() {
                row[j + 1] = add(row[j + 1], mul_mod(u, row[k], p));
            }
        }
    }

    // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] (prod h[j][j-1]) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = add(next[k + 1], c);
            next[k] = sub(next[k], mul_mod(h[m - 1][m - 1], c, p));
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mul_mod(t, h[i][i - 1], p);
            if t == 0 {
                break;
            }
            let f = mul_mod(h[i - 1][m - 1], t, p);
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                next[k] = sub(next[k], mul_mod(f, c, p));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Division-free Berkowitz algorithm. `O(n^4)`; intended for small
/// matrices and as an independent check on [`char_poly`].
pub fn char_poly_berkowitz(a: &IntMatrix) -> Result<IntPoly> {
    let n = a.require_square()?;
    // coefficients highest degree first while iterating
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let col: Vec<BigInt> = (0..r).map(|i| a[(i, r)].clone()).collect();
        let row: Vec<BigInt> = (0..r).map(|j| a[(r, j)].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[(r, r)].clone());
        let mut w = col;
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&w).map(|(x, y)| x * y).sum();
            t.push(-dot);
            w = (0..r)
                .map(|i| (0..r).map(|j| &a[(i, j)] * &w[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j {
                    *slot += &t[i - j] * vj;
                }
            }
        }
        v = next;
    }
    v.reverse();
    Ok(IntPoly::new(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_char_polys() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
        assert_eq!(char_poly(&a).unwrap(), IntPoly::from_i64(&[3, -4, 1]));
        assert_eq!(char_poly_berkowitz(&a).unwrap(), IntPoly::from_i64(&[3, -4, 1]));
        let r = IntMatrix::from_rows(&[[5]]);
        assert_eq!(char_poly(&r).unwrap(), IntPoly::from_i64(&[-5, 1]));
        assert_eq!(char_poly(&IntMatrix::zeros(0, 0)).unwrap(), IntPoly::one());
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn companion_round_trip() {
        // companion of x^3 - 7x^2 + 14x - 8
        let c = IntMatrix::from_rows(&[[0, 0, 8], [1, 0, -14], [0, 1, 7]]);
        assert_eq!(char_poly(&c).unwrap(), IntPoly::from_i64(&[-8, 14, -7, 1]));
    }

    #[test]
    fn large_entries_need_several_primes() {
        let big = BigInt::from(10).pow(40);
        let mut a = IntMatrix::from_rows(&[[1, 2, 0], [3, 4, 5], [0, 6, 7]]);
        a[(0, 0)] = big.clone();
        a[(2, 1)] = -big;
        assert_eq!(char_poly(&a).unwrap(), char_poly_berkowitz(&a).unwrap());
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(2_305_843_009_213_693_953));
        let ps: Vec<u64> = Primes::new().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }
}
