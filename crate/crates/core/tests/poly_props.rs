use diffposet::linalg::{char_poly, IntMatrix};
use diffposet::poly::{
    block_companion_snf, block_diagonal, companion, poly_divisibility_chain, reduce_to_snf_zx, verify_poly_snf,
    CompanionBlock,
};
use diffposet::{BigInt, IntPoly, PolyMatrix};
use num_traits::Zero;
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 0..=5).prop_map(|c| IntPoly::from_i64(&c))
}

/// Monic of degree `1..=max_deg`.
fn monic(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-3i64..=3, 1..=max_deg).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64(&c)
    })
}

fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 0..=2), n * n).prop_map(move |entries| {
        let mut m = PolyMatrix::zeros(n, n);
        m.entries_mut()
            .iter_mut()
            .zip(entries)
            .for_each(|(e, c)| *e = IntPoly::from_i64(&c));
        m
    })
}

/// A divisibility chain `a_1 | a_2 | ...` of monic polynomials.
fn chain() -> impl Strategy<Value = Vec<IntPoly>> {
    (monic(2), prop::collection::vec(monic(1), 0..=2)).prop_map(|(first, steps)| {
        let mut out = vec![first];
        for s in steps {
            let next = out.last().unwrap() * &s;
            out.push(next);
        }
        out
    })
}

fn blocks(polys: &[IntPoly]) -> Vec<CompanionBlock> {
    polys.iter().map(|p| companion(p).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-&(-&a), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), t in -6i64..=6, c in -4i64..=4) {
        let t = big(t);
        prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
        prop_assert_eq!((&a + &b).eval(&t), a.eval(&t) + b.eval(&t));
        prop_assert_eq!(a.shift(&big(c)).eval(&t), a.eval(&(&t + c)));
        prop_assert_eq!(a.negate_var().eval(&t), a.eval(&-&t));
    }

    #[test]
    fn monic_division(a in poly(), d in monic(3)) {
        let (q, r) = a.reduce_by(&d);
        prop_assert_eq!(&(&q * &d) + &r, a.clone());
        prop_assert!(r.degree().is_none_or(|k| k < d.degree().unwrap()));
        let prod = &a * &d;
        prop_assert_eq!(prod.div_exact(&d), Some(a.clone()));
        prop_assert!(d.divides(&prod));
    }

    #[test]
    fn companion_has_its_polynomial(a in monic(4)) {
        let b = companion(&a).unwrap();
        prop_assert_eq!(char_poly(&b.matrix).unwrap(), a.clone());
        // a(C_a) = 0
        prop_assert!(a.eval_matrix(&b.matrix).max_abs().is_zero());
    }

    #[test]
    fn matrix_products(a in poly_matrix(2), b in poly_matrix(2), c in poly_matrix(2), t in -3i64..=3) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        let t = big(t);
        prop_assert_eq!((&a * &b).eval(&t), &a.eval(&t) * &b.eval(&t));
    }

    #[test]
    fn block_companion_certificates(polys in chain()) {
        let bs = blocks(&polys);
        let a = block_diagonal(&bs);
        let cert = block_companion_snf(&bs).unwrap();
        prop_assert!(verify_poly_snf(&cert, &PolyMatrix::x_minus(&a).unwrap()));
        let units = a.rows() - polys.len();
        prop_assert!(cert.diag[..units].iter().all(IntPoly::is_one));
        prop_assert_eq!(&cert.diag[units..], &polys[..]);
        prop_assert!(poly_divisibility_chain(&cert.diag));

        let flipped = cert.flip_convention();
        prop_assert!(verify_poly_snf(&flipped, &PolyMatrix::x_plus(&a).unwrap()));
        for (f, p) in flipped.diag[units..].iter().zip(&polys) {
            let sign = if p.degree().unwrap() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(f.clone(), p.negate_var().scale(&big(sign)));
        }
    }

    #[test]
    fn heuristic_reduction_is_sound(data in prop::collection::vec(-3i64..=3, 9)) {
        let a = IntMatrix::new(3, 3, data.into_iter().map(BigInt::from).collect()).unwrap();
        let m = PolyMatrix::x_minus(&a).unwrap();
        if let Ok(cert) = reduce_to_snf_zx(&m) {
            prop_assert!(verify_poly_snf(&cert, &m));
            let prod = cert.diag.iter().fold(IntPoly::one(), |acc, d| &acc * d);
            prop_assert_eq!(prod, char_poly(&a).unwrap());
        }
    }
}

#[test]
fn chain_violation_is_rejected() {
    let bs = blocks(&[IntPoly::from_i64(&[-2, 1]), IntPoly::from_i64(&[-3, 1])]);
    assert!(block_companion_snf(&bs).is_err());
}

#[test]
fn display() {
    assert_eq!(IntPoly::from_i64(&[8, 14, 7, 1]).to_string(), "x^3 + 7x^2 + 14x + 8");
    assert_eq!(IntPoly::from_i64(&[-1, 0, -2]).to_string(), "-2x^2 - 1");
    assert_eq!(IntPoly::zero().to_string(), "0");
}
