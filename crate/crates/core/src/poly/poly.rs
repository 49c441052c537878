use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::json;
use crate::linalg::{IntMatrix, IntVec};

/// Dense polynomial in `Z[x]`, coefficients lowest degree first.
///
/// Canonical form: no trailing zero coefficient; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "RawPoly")]
pub struct IntPoly {
    #[serde(with = "json::int_vec")]
    coeffs: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawPoly {
    #[serde(with = "json::int_vec")]
    coeffs: Vec<BigInt>,
}

impl From<RawPoly> for IntPoly {
    fn from(raw: RawPoly) -> Self {
        IntPoly::new(raw.coeffs)
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - root`.
    pub fn linear(root: &BigInt) -> Self {
        Self::new(vec![-root.clone(), BigInt::one()])
    }

    /// `prod (x - root)^mult`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = (&'a BigInt, usize)>) -> Self {
        let mut p = Self::one();
        for (root, mult) in roots {
            let f = Self::linear(root);
            for _ in 0..mult {
                p = &p * &f;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `±1`, the units of `Z[x]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &BigInt) -> Self {
        // Horner in Z[x]: acc = acc * (x + c) + coeff
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        let mut acc = Self::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(coeff.clone());
        }
        acc
    }

    /// `p(-x)`.
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Sign-normalized copy (positive leading coefficient) and the sign used.
    pub fn normalize_sign(&self) -> (Self, i8) {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => (-self, -1),
            _ => (self.clone(), 1),
        }
    }

    /// Quotient `q` with `self = q * d`, if one exists in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return self.is_zero().then(IntPoly::zero);
        }
        let (q, r) = self.reduce_by(d);
        r.is_zero().then_some(q)
    }

    /// `true` iff `self` divides `other` in `Z[x]`.
    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Division steps that stay in `Z[x]`: the top term is cancelled while
    /// `lc(d)` divides the current leading coefficient. Returns the partial
    /// quotient and remainder with `self = q * d + r`.
    pub fn reduce_by(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let Some(dd) = d.degree() else {
            return (IntPoly::zero(), self.clone());
        };
        let lc = d.leading_coeff().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len().saturating_sub(dd)];
        while let Some(rd) = r.len().checked_sub(1) {
            if rd < dd {
                break;
            }
            let (f, rem) = r[rd].div_rem(lc);
            if !rem.is_zero() {
                break;
            }
            let shift = rd - dd;
            for (k, c) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &f * c;
            }
            q[shift] = f;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// `p(A) v` by Horner's rule.
    pub fn apply(&self, a: &IntMatrix, v: &[BigInt]) -> IntVec {
        let mut acc: IntVec = vec![BigInt::zero(); v.len()];
        for c in self.coeffs.iter().rev() {
            acc = a.mul_vec(&acc);
            if !c.is_zero() {
                for (x, y) in acc.iter_mut().zip(v) {
                    *x += c * y;
                }
            }
        }
        acc
    }

    /// `p(A)` as a matrix.
    pub fn eval_matrix(&self, a: &IntMatrix) -> IntMatrix {
        let n = a.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

/// `acc += a * b` on a raw coefficient buffer that grows as needed.
pub(crate) fn add_product(acc: &mut Vec<BigInt>, a: &IntPoly, b: &IntPoly) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    let need = a.coeffs.len() + b.coeffs.len() - 1;
    if acc.len() < need {
        acc.resize(need, BigInt::zero());
    }
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        crate::linalg::axpy(&mut acc[i..i + b.coeffs.len()], x, &b.coeffs);
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut acc = Vec::new();
        add_product(&mut acc, self, rhs);
        IntPoly::new(acc)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[-1, 1]); // x - 1
        let b = p(&[-3, 1]); // x - 3
        assert_eq!(&a * &b, p(&[3, -4, 1]));
        assert_eq!((&a * &b).to_string(), "x^2 - 4x + 3");
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "2x^3 - x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(&a - &a, IntPoly::zero());
    }

    #[test]
    fn roots_product() {
        let r: Vec<BigInt> = [1, 2, 4].iter().map(|&v| BigInt::from(v)).collect();
        let f = IntPoly::from_roots(r.iter().map(|x| (x, 1)));
        assert_eq!(f, p(&[-8, 14, -7, 1]));
    }

    #[test]
    fn substitutions() {
        let f = p(&[3, -4, 1]); // (x-1)(x-3)
        // x -> x - 1 gives (x-2)(x-4)
        assert_eq!(f.shift(&BigInt::from(-1)), p(&[8, -6, 1]));
        // x -> -x gives (x+1)(x+3)
        assert_eq!(f.negate_var(), p(&[3, 4, 1]));
    }

    #[test]
    fn exact_division() {
        let f = p(&[3, -4, 1]);
        assert_eq!(f.div_exact(&p(&[-1, 1])), Some(p(&[-3, 1])));
        assert_eq!(f.div_exact(&p(&[-2, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[1, 4]).div_exact(&p(&[2])), None);
        // non-monic divisor whose quotient leaves Z[x]
        assert_eq!(p(&[0, 1]).div_exact(&p(&[1, 2])), None);
        assert!(p(&[-1, 1]).divides(&f));
        assert!(IntPoly::zero().divides(&IntPoly::zero()));
        assert!(!IntPoly::zero().divides(&f));
    }

    #[test]
    fn apply_to_vector() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
        let f = p(&[3, -4, 1]);
        let v = vec![BigInt::from(1), BigInt::from(0)];
        assert!(f.apply(&a, &v).iter().all(Zero::is_zero));
        assert!(f.eval_matrix(&a).is_zero());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&p(&[3, -4, 1])).unwrap();
        assert_eq!(s, r#"{"coeffs":["3","-4","1"]}"#);
        let back: IntPoly = serde_json::from_str(r#"{"coeffs":["1","0"]}"#).unwrap();
        assert_eq!(back, IntPoly::one());
    }
}
