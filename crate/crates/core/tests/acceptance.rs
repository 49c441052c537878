//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process exits non-zero
//! if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use diffposet::linalg::{
    char_poly, char_poly_berkowitz, inverse_unimodular, is_basis, is_surjective_over_z, kernel_basis, snf,
    solve_preimage,
};
use diffposet::poly::{
    block_companion_snf, block_diagonal, companion, poly_divisibility_chain, reduce_to_snf_zx, verify_poly_snf,
    PolySnfCertificate,
};
use diffposet::rcf::{
    conjecture_certificate, rcf_base_case, rcf_to_certificate, verify_conjecture, SearchConfig, Status, VerifyConfig,
};
use diffposet::{BigInt, IntMatrix, IntPoly, PolyMatrix, Poset};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn poset(spec: &str) -> Poset {
    Poset::new(spec.parse().expect("valid spec"))
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Δp_n` straight from the rank sizes, with `p_{-1} = 0`.
fn delta_p(p: &Poset, n: usize) -> i64 {
    let prev = if n == 0 { 0 } else { p.rank_size(n - 1) as i64 };
    p.rank_size(n) as i64 - prev
}

/// `prod_i (x - (shift + r i))^{Δp_{n-i}}` built from rank sizes alone.
fn spectrum_poly(p: &Poset, n: usize, shift: i64) -> IntPoly {
    let r = p.r() as i64;
    let mut out = IntPoly::one();
    for i in 0..=n {
        let mult = delta_p(p, n - i);
        let root = big(r * i as i64 + shift);
        for _ in 0..mult {
            out = &out * &IntPoly::linear(&root);
        }
    }
    out
}

const AXIOM_CASES: [(&str, usize); 5] = [("young", 12), ("yf", 12), ("young^2", 8), ("young*yf", 8), ("yf^2", 8)];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut ranks = 0;
    for (spec, n_max) in AXIOM_CASES {
        let p = poset(spec);
        let report = p.verify_axioms(n_max);
        ensure(report.passed, || format!("{spec}: {:?}", report.violation))?;
        let r = big(p.r() as i64);
        for n in 0..=n_max {
            // D_{n+1} U_n - U_{n-1} D_n from the raw cover matrices.
            let up = p.up_matrix(n);
            let du = &p.down_matrix(n + 1).unwrap() * &up;
            let ud = if n == 0 {
                IntMatrix::zeros(1, 1)
            } else {
                &p.up_matrix(n - 1) * &p.down_matrix(n).unwrap()
            };
            let diff = du.try_sub(&ud).unwrap();
            let expected = IntMatrix::scalar(p.rank_size(n), &r);
            ensure(diff == expected, || format!("{spec}: DU - UD != rI at n = {n}"))?;
            ranks += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{ranks} ranks over 5 posets, {secs:.2}s"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (spec, n_max) in AXIOM_CASES {
        let p = poset(spec);
        let r = p.r() as i64;
        for n in 0..=n_max {
            let du = p.du_matrix(n);
            let ud = p.ud_matrix(n);
            let want_du = spectrum_poly(&p, n, r);
            let want_ud = spectrum_poly(&p, n, 0);
            let got_du = char_poly(&du).unwrap();
            let got_ud = char_poly(&ud).unwrap();
            ensure(got_du == want_du, || format!("{spec}: Ch(DU_{n}) = {got_du}, expected {want_du}"))?;
            ensure(got_ud == want_ud, || format!("{spec}: Ch(UD_{n}) = {got_ud}, expected {want_ud}"))?;
            if du.rows() <= 20 {
                ensure(char_poly_berkowitz(&du).unwrap() == want_du, || {
                    format!("{spec}: division-free Ch(DU_{n}) disagrees")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} ranks, DU and UD"))
}

fn criterion_3() -> Outcome {
    let y = poset("young");
    let du2 = y.du_matrix(2);
    ensure(du2 == IntMatrix::from_rows(&[[2, 1], [1, 2]]), || format!("DU_2 = {du2:?}"))?;
    ensure(du2.det().unwrap() == big(3), || "det DU_2 != 3".into())?;
    let s = snf(&du2);
    ensure(s.diag == vec![big(1), big(3)] && s.verify(&du2), || format!("SNF diagonal {:?}", s.diag))?;

    let target = IntMatrix::from_rows(&[[3, 1], [1, 3]]);
    let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
    for spec in ["young^2", "young*yf", "yf*young", "yf^2", "z(2)"] {
        let du1 = poset(spec).du_matrix(1);
        let conj = &(&swap * &du1) * &swap;
        ensure(du1 == target || conj == target, || format!("{spec}: DU_1 = {du1:?}"))?;
    }
    Ok("DU_2(Y) = [[2,1],[1,2]], det 3, SNF (1,3); DU_1 = [[3,1],[1,3]] for 5 products".into())
}

/// Independent replay of a `DU_n + xI` certificate.
fn replay(cert: &PolySnfCertificate, du: &IntMatrix, p: &Poset, n: usize) -> Result<(), String> {
    let m = PolyMatrix::x_plus(du).unwrap();
    let dim = du.rows();
    let id = PolyMatrix::identity(dim);
    ensure(&(&cert.p * &m) * &cert.q == cert.d, || format!("P M Q != D at n = {n}"))?;
    ensure(&cert.p * &cert.p_inv == id && &cert.q * &cert.q_inv == id, || {
        format!("transform inverse fails at n = {n}")
    })?;
    ensure(cert.d.is_diagonal() && cert.d.diagonal() == cert.diag, || format!("D not diagonal at n = {n}"))?;
    ensure(poly_divisibility_chain(&cert.diag), || format!("chain fails at n = {n}"))?;
    // det(xI + DU_n) = prod (x + r(i+1))^{Δp_{n-i}}.
    let prod = cert.diag.iter().fold(IntPoly::one(), |acc, d| &acc * d);
    let want = spectrum_poly(p, n, p.r() as i64).negate_var();
    let want = if dim % 2 == 1 { -&want } else { want };
    ensure(prod == want, || format!("diagonal product {prod} != {want} at n = {n}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cases = [("young", 10, 2), ("yf", 10, 2), ("young^2", 7, 1), ("young*yf", 7, 1)];
    let mut summary = Vec::new();
    for (spec, n_max, l) in cases {
        let p = poset(spec);
        let report = verify_conjecture(&p, n_max, l, &VerifyConfig::default());
        for r in &report.ranks {
            ensure(r.passed(), || format!("{spec} n = {}: {:?} {:?}", r.n, r.method, r.obstructions))?;
            let cert = r.snf_certificate.as_ref().ok_or_else(|| format!("{spec} n = {}: no certificate", r.n))?;
            replay(cert, &p.du_matrix(r.n), &p, r.n).map_err(|e| format!("{spec}: {e}"))?;
        }
        ensure(report.status == Status::Pass, || format!("{spec}: {:?}", report.status))?;
        summary.push(format!("{spec} n<={n_max}"));
    }
    Ok(format!("{} in {:.1}s", summary.join(", "), start.elapsed().as_secs_f64()))
}

/// Partitions of `n` with every part at least 2.
fn partitions_min_part_2(n: usize) -> i64 {
    let mut ways = vec![0i64; n + 1];
    ways[0] = 1;
    for part in 2..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

fn criterion_5() -> Outcome {
    for spec in ["young", "yf"] {
        let p = poset(spec);
        for n in 1..=12 {
            let d = p.down_matrix(n).unwrap();
            ensure(is_surjective_over_z(&d), || format!("{spec}: D_{n} not surjective"))?;
        }
        let rep = diffposet::theory::check_down_surjectivity(&p, 11);
        ensure(rep.all_surjective(), || format!("{spec}: surjectivity report disagrees"))?;
    }

    // Δp_n >= Δp_{n-1-δ} + 1 for n >= l + 1, δ = 1 exactly when r = 1.
    for (spec, l, n_max) in [("young", 2, 12), ("yf", 2, 12), ("young^2", 1, 8), ("young*yf", 1, 8), ("yf^2", 1, 8)] {
        let p = poset(spec);
        let delta = i64::from(p.r() == 1);
        for n in l + 1..=n_max {
            let back = n as i64 - 1 - delta;
            let rhs = if back < 0 { 0 } else { delta_p(&p, back as usize) } + 1;
            ensure(delta_p(&p, n) >= rhs, || format!("{spec}: rank inequality fails at n = {n}"))?;
        }
        let rep = diffposet::theory::check_rank_inequality(&p, l, n_max);
        ensure(rep.holds, || format!("{spec}: library rank inequality disagrees"))?;
    }

    let yf = poset("yf");
    let (mut a, mut b) = (1i64, 1i64);
    for n in 2..=12 {
        // a = f_{n-2} with f_0 = f_1 = 1
        ensure(delta_p(&yf, n) == a, || format!("yf: Δp_{n} = {} != {a}", delta_p(&yf, n)))?;
        (a, b) = (b, a + b);
    }

    let y = poset("young");
    for n in 0..=12 {
        let want = partitions_min_part_2(n);
        ensure(delta_p(&y, n) == want, || format!("young: Δp_{n} = {} != {want}", delta_p(&y, n)))?;
    }
    Ok("surjectivity to 12, rank inequality, Fibonacci and partition identities".into())
}

/// Random monic chain `a_1 | ... | a_m` with total degree `dim` and roots in
/// `[-2, 2]`: each `a_i` takes a prefix of the roots of `a_{i+1}`.
fn random_chain(rng: &mut ChaCha8Rng, dim: usize) -> Vec<IntPoly> {
    let mut degrees = Vec::new();
    let mut left = dim;
    let mut cap = dim;
    while left > 0 {
        let d = rng.gen_range(1..=left.min(cap));
        degrees.push(d);
        left -= d;
        cap = d;
    }
    degrees.reverse();
    let top = *degrees.last().unwrap();
    let roots: Vec<BigInt> = (0..top).map(|_| big(rng.gen_range(-2..=2))).collect();
    degrees
        .iter()
        .map(|&d| IntPoly::from_roots(roots[..d].iter().map(|t| (t, 1))))
        .collect()
}

fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(dim);
    for _ in 0..rng.gen_range(1..=5) {
        let i = rng.gen_range(0..dim);
        let j = (i + rng.gen_range(1..dim)) % dim;
        if rng.gen_bool(0.2) {
            u.swap_rows(i, j);
        } else {
            let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2);
            u.add_row_multiple(i, j, &big(c));
        }
    }
    u
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let search = SearchConfig::default();
    let (mut tried, mut rcf_ok, mut compared, mut heuristic_failed) = (0, 0, 0, 0);
    let mut sizes = BTreeMap::new();
    while tried < 240 {
        let dim = rng.gen_range(2..=4);
        let chain = random_chain(&mut rng, dim);
        let blocks: Vec<_> = chain.iter().map(|a| companion(a).unwrap()).collect();
        let c = block_diagonal(&blocks);
        let u = random_unimodular(&mut rng, dim);
        let a = &(&u * &c) * &inverse_unimodular(&u).unwrap();
        if a.max_abs() > big(5) {
            continue;
        }
        tried += 1;
        *sizes.entry(dim).or_insert(0) += 1;
        let m = PolyMatrix::x_minus(&a).unwrap();
        let Ok(dec) = rcf_base_case(&a, &search) else { continue };
        rcf_ok += 1;
        let cert = rcf_to_certificate(&dec).map_err(|e| format!("bridge failed on {a:?}: {e}"))?;
        ensure(verify_poly_snf(&cert, &m), || format!("bridged certificate rejected for {a:?}"))?;
        ensure(cert.diag.iter().filter(|d| !d.is_one()).cloned().collect::<Vec<_>>() == chain, || {
            format!("bridged diagonal {:?} != construction {:?}", cert.diag, chain)
        })?;
        let flipped = conjecture_certificate(&dec).unwrap();
        ensure(verify_poly_snf(&flipped, &PolyMatrix::x_plus(&a).unwrap()), || {
            format!("flipped certificate rejected for {a:?}")
        })?;
        match reduce_to_snf_zx(&m) {
            Ok(h) => {
                ensure(verify_poly_snf(&h, &m), || format!("heuristic certificate rejected for {a:?}"))?;
                ensure(h.diag == cert.diag, || {
                    format!("disagreement on {a:?}: {:?} vs {:?}", h.diag, cert.diag)
                })?;
                compared += 1;
            }
            Err(_) => heuristic_failed += 1,
        }
    }
    ensure(tried >= 200, || "too few matrices".into())?;
    Ok(format!(
        "{tried} matrices {sizes:?}, {rcf_ok} base-case successes, {compared} compared, \
         {heuristic_failed} heuristic failures, 0 disagreements"
    ))
}

fn mutate(cert: &PolySnfCertificate, rng: &mut ChaCha8Rng) -> PolySnfCertificate {
    let mut out = cert.clone();
    let delta = big(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3));
    let bump = |p: &IntPoly, rng: &mut ChaCha8Rng| {
        let mut c = p.coeffs().to_vec();
        let k = rng.gen_range(0..=c.len());
        if k == c.len() {
            c.push(BigInt::from(0));
        }
        c[k] += &delta;
        IntPoly::new(c)
    };
    let target = rng.gen_range(0..6);
    if target == 5 {
        let i = rng.gen_range(0..out.diag.len());
        out.diag[i] = bump(&out.diag[i], rng);
        return out;
    }
    let m = match target {
        0 => &mut out.p,
        1 => &mut out.d,
        2 => &mut out.q,
        3 => &mut out.p_inv,
        _ => &mut out.q_inv,
    };
    let (i, j) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
    m[(i, j)] = bump(&m[(i, j)], rng);
    out
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let y = poset("young");
    let report = verify_conjecture(&y, 5, 2, &VerifyConfig::default());
    let mut certs: Vec<(PolySnfCertificate, PolyMatrix)> = report
        .ranks
        .iter()
        .map(|r| (r.snf_certificate.clone().unwrap(), PolyMatrix::x_plus(&y.du_matrix(r.n)).unwrap()))
        .collect();
    let blocks = vec![
        companion(&IntPoly::from_i64(&[-1, 1])).unwrap(),
        companion(&IntPoly::from_i64(&[2, -3, 1])).unwrap(),
    ];
    let c = block_diagonal(&blocks);
    certs.push((block_companion_snf(&blocks).unwrap(), PolyMatrix::x_minus(&c).unwrap()));
    for (cert, m) in &certs {
        ensure(verify_poly_snf(cert, m), || "unmutated certificate rejected".into())?;
    }
    let mut count = 0;
    for k in 0..300 {
        let (cert, m) = &certs[k % certs.len()];
        let bad = mutate(cert, &mut rng);
        ensure(bad != *cert, || "mutation was a no-op".into())?;
        ensure(!verify_poly_snf(&bad, m), || format!("mutation {k} accepted"))?;
        count += 1;
    }
    Ok(format!("{count} single-coefficient mutations over {} certificates, all rejected", certs.len()))
}

fn criterion_8() -> Outcome {
    let du2 = poset("young").du_matrix(2);
    let eigen = |lambda: i64| {
        let shifted = du2.try_sub(&IntMatrix::scalar(2, &big(lambda))).unwrap();
        kernel_basis(&shifted).vectors
    };
    let (e1, e3) = (eigen(1), eigen(3));
    ensure(e1.len() == 1 && e3.len() == 1, || "eigenspaces are not lines".into())?;
    let union: Vec<_> = e1.iter().chain(&e3).cloned().collect();
    ensure(!is_basis(&union), || "eigen-lattices span Z^2".into())?;
    let m = IntMatrix::from_columns(2, &union).unwrap();
    let witness = vec![big(1), big(0)];
    ensure(solve_preimage(&m, &witness).unwrap().is_none(), || "(1,0) lies in the span".into())?;
    ensure(m.det().unwrap().abs() == big(2), || "unexpected index".into())?;
    Ok(format!("ker(DU_2 - I) = {:?}, ker(DU_2 - 3I) = {:?}, (1,0) outside their span", e1[0], e3[0]))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom suite", criterion_1),
        ("spectra", criterion_2),
        ("worked values", criterion_3),
        ("conjecture verification", criterion_4),
        ("hypothesis checks", criterion_5),
        ("RCF and heuristic SNF agree", criterion_6),
        ("certificate fuzzing", criterion_7),
        ("non-diagonalizability witness", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS  {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL  {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
