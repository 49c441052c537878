use diffposet::linalg::{
    char_poly, char_poly_berkowitz, content, ds, has_free_cokernel, hnf, inverse_unimodular, is_surjective_over_z,
    kernel_basis, lll_reduce, size_reduce, snf, solve_preimage, IntMatrix, IntVec,
};
use diffposet::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |d| IntMatrix::new(rows, cols, d.into_iter().map(BigInt::from).collect()).unwrap())
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

fn square(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1usize..=max).prop_flat_map(|n| matrix(n, n, 5))
}

/// Product of random elementary row operations.
fn unimodular() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..10)).prop_map(|(n, ops)| {
        let mut u = IntMatrix::identity(n);
        for (i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                u.swap_rows(i, (i + 1) % n);
            } else {
                u.add_row_multiple(i, j, &big(c));
            }
        }
        u
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn minor(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let data = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| a[(i, j)].clone()))
        .collect();
    IntMatrix::new(rows.len(), cols.len(), data).unwrap().det().unwrap()
}

/// Smith diagonal from determinantal divisors `d_k = gcd` of `k x k` minors.
fn smith_by_minors(a: &IntMatrix) -> Vec<BigInt> {
    let k_max = a.rows().min(a.cols());
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=k_max {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                g = g.gcd(&minor(a, &rs, &cs));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat(BigInt::zero()).take(k_max - k + 1));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_matches_determinantal_divisors(a in any_matrix()) {
        let c = snf(&a);
        prop_assert!(c.verify(&a));
        prop_assert!(c.p.is_unimodular() && c.q.is_unimodular());
        prop_assert_eq!(c.diag.clone(), smith_by_minors(&a));
        prop_assert_eq!(ds(&a), c.diag);
    }

    #[test]
    fn surjectivity_tests_agree(a in any_matrix()) {
        let d = smith_by_minors(&a);
        let all_ones = d.iter().all(One::is_one) && a.rows() <= a.cols();
        prop_assert_eq!(is_surjective_over_z(&a), all_ones);
        // Torsion in the cokernel shows up as a diagonal entry other than 0 or 1.
        let free = d.iter().all(|e| e.is_zero() || e.is_one());
        prop_assert_eq!(has_free_cokernel(&a), free);
    }

    #[test]
    fn hnf_is_echelon_with_reduced_columns(a in any_matrix()) {
        let f = hnf(&a);
        prop_assert_eq!(&f.u * &a, f.h.clone());
        prop_assert!(f.u.is_unimodular());
        let mut last_col = None;
        for (k, &(row, col)) in f.pivots.iter().enumerate() {
            prop_assert_eq!(row, k);
            prop_assert!(last_col.is_none_or(|c| col > c));
            last_col = Some(col);
            let p = &f.h[(row, col)];
            prop_assert!(p.is_positive());
            for i in 0..row {
                prop_assert!(!f.h[(i, col)].is_negative() && &f.h[(i, col)] < p);
            }
            for j in 0..col {
                prop_assert!(f.h[(row, j)].is_zero());
            }
        }
        for i in f.rank()..a.rows() {
            prop_assert!(f.h.row(i).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_is_saturated(a in any_matrix()) {
        let k = kernel_basis(&a);
        prop_assert_eq!(k.len(), a.cols() - a.rank());
        for v in &k.vectors {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            let m = k.to_matrix(a.cols());
            prop_assert!(ds(&m).iter().all(One::is_one));
        }
    }

    #[test]
    fn unimodular_inverse(u in unimodular()) {
        let inv = inverse_unimodular(&u).unwrap();
        prop_assert!((&u * &inv).is_identity());
        prop_assert!((&inv * &u).is_identity());
    }

    #[test]
    fn inverse_rejects_other_determinants(a in square(4)) {
        let d = a.det().unwrap();
        prop_assert_eq!(inverse_unimodular(&a).is_some(), d.abs().is_one());
    }

    #[test]
    fn char_poly_agrees_with_det(a in square(5), t in -4i64..=4) {
        let p = char_poly(&a).unwrap();
        prop_assert_eq!(p.clone(), char_poly_berkowitz(&a).unwrap());
        let n = a.rows();
        let shifted = IntMatrix::scalar(n, &big(t)).try_sub(&a).unwrap();
        prop_assert_eq!(p.eval(&big(t)), shifted.det().unwrap());
    }

    #[test]
    fn preimages_solve(a in any_matrix(), x in prop::collection::vec(-5i64..=5, 4)) {
        let x: IntVec = x[..a.cols()].iter().map(|&v| big(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve_preimage(&a, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn lll_keeps_the_lattice(u in unimodular(), scale in 1i64..=4) {
        let n = u.rows();
        let cols: Vec<IntVec> = u.columns().into_iter().map(|c| c.iter().map(|v| v * scale).collect()).collect();
        let reduced = lll_reduce(&cols);
        let before = hnf(&IntMatrix::from_columns(n, &cols).unwrap().transpose()).h;
        let after = hnf(&IntMatrix::from_columns(n, &reduced).unwrap().transpose()).h;
        prop_assert_eq!(before, after);
        // Size reduction moves a vector by a lattice element.
        let v: IntVec = (0..n).map(|i| big(17 * i as i64 - 40)).collect();
        let w = size_reduce(&reduced, &v);
        let diff: IntVec = v.iter().zip(&w).map(|(a, b)| a - b).collect();
        let basis = IntMatrix::from_columns(n, &reduced).unwrap();
        prop_assert!(solve_preimage(&basis, &diff).unwrap().is_some());
    }
}

#[test]
fn content_examples() {
    assert_eq!(content(&[big(4), big(-6), big(10)]), big(2));
    assert_eq!(content(&[big(0), big(0)]), big(0));
    assert_eq!(content(&[big(3), big(5)]), big(1));
}

#[test]
fn snf_of_du2() {
    let a = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
    assert_eq!(snf(&a).diag, vec![big(1), big(3)]);
}
