use std::collections::BTreeSet;

use diffposet::{Poset, PosetElement, RankedPosetSpec};
use proptest::prelude::*;

fn poset(spec: &str) -> Poset {
    Poset::new(spec.parse().unwrap())
}

/// All partitions of `n` with parts at most `max`, in decreasing lexicographic order.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Words over {1, 2} with letter sum `n`.
fn words(n: u32) -> Vec<Vec<u8>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        _ => {
            let mut out = Vec::new();
            for (letter, rest) in [(1u8, n - 1), (2u8, n - 2)] {
                for mut w in words(rest) {
                    w.insert(0, letter);
                    out.push(w);
                }
            }
            out
        }
    }
}

/// Add one box to a Young diagram in every possible way.
fn young_covers(p: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for i in 0..=p.len() {
        let mut q = p.to_vec();
        if i == p.len() {
            q.push(1);
        } else if i == 0 || p[i - 1] > p[i] {
            q[i] += 1;
        } else {
            continue;
        }
        out.insert(q);
    }
    out
}

fn rank_parts(poset: &Poset, n: usize) -> Vec<PosetElement> {
    poset.rank(n).elements.clone()
}

#[test]
fn young_ranks_are_partitions_in_reverse_lex_order() {
    let y = poset("young");
    for n in 0..=9u32 {
        let expected: Vec<PosetElement> = partitions(n, n).iter().map(|p| PosetElement::partition(p)).collect();
        assert_eq!(rank_parts(&y, n as usize), expected, "rank {n}");
    }
    let names: Vec<String> = rank_parts(&y, 4).iter().map(ToString::to_string).collect();
    assert_eq!(names, ["4", "31", "22", "211", "1111"]);
}

#[test]
fn yf_ranks_are_words_longest_first() {
    let yf = poset("yf");
    for n in 0..=10u32 {
        let mut ws = words(n);
        ws.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let expected: Vec<PosetElement> = ws.into_iter().map(PosetElement::Word).collect();
        assert_eq!(rank_parts(&yf, n as usize), expected, "rank {n}");
    }
    let names: Vec<String> = rank_parts(&yf, 3).iter().map(ToString::to_string).collect();
    assert_eq!(names, ["111", "12", "21"]);
}

#[test]
fn young_covers_add_one_box() {
    let y = poset("young");
    for n in 0..=7 {
        for e in rank_parts(&y, n) {
            let PosetElement::Partition(p) = &e else { unreachable!() };
            let got: BTreeSet<Vec<u32>> = y
                .covers_up(&e)
                .unwrap()
                .into_iter()
                .map(|c| match c {
                    PosetElement::Partition(q) => q,
                    other => panic!("unexpected {other}"),
                })
                .collect();
            assert_eq!(got, young_covers(p), "covers of {e}");
        }
    }
    let covers: Vec<String> = y
        .covers_up(&PosetElement::partition(&[2, 1]))
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(covers, ["31", "22", "211"]);
}

#[test]
fn malformed_elements_are_rejected() {
    let y = poset("young");
    assert!(y.covers_up(&PosetElement::partition(&[1, 2])).is_err());
    assert!(y.covers_up(&PosetElement::word("12").unwrap()).is_err());
    assert!(PosetElement::word("13").is_err());
    assert!(y.down_matrix(0).is_err());
}

#[test]
fn down_is_transpose_of_up() {
    for spec in ["young", "yf", "young*yf", "z(3)"] {
        let p = poset(spec);
        for n in 0..5 {
            assert_eq!(p.down_matrix(n + 1).unwrap(), p.up_matrix(n).transpose(), "{spec} n={n}");
        }
    }
}

fn base_spec() -> impl Strategy<Value = RankedPosetSpec> {
    prop_oneof![Just(RankedPosetSpec::Young), Just(RankedPosetSpec::YoungFib)]
}

fn spec() -> impl Strategy<Value = RankedPosetSpec> {
    prop::collection::vec(base_spec(), 1..=3).prop_map(|fs| RankedPosetSpec::product(fs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spec_display_round_trips(s in spec()) {
        let text = s.to_string();
        prop_assert_eq!(text.parse::<RankedPosetSpec>().unwrap(), s);
    }

    #[test]
    fn axioms_hold(s in spec(), n_max in 0usize..=5) {
        let p = Poset::new(s.clone());
        let rep = p.verify_axioms(n_max);
        prop_assert!(rep.passed, "{} {:?}", s, rep.violation);
        prop_assert_eq!(p.r() as usize, s.components().len());
    }

    #[test]
    fn covers_are_one_rank_up_and_valid(s in spec(), n in 0usize..=4) {
        let p = Poset::new(s.clone());
        for e in rank_parts(&p, n) {
            let covers = p.covers_up(&e).unwrap();
            prop_assert!(!covers.is_empty());
            for c in covers {
                prop_assert_eq!(c.rank(), n + 1);
                prop_assert!(c.validate(&s).is_ok());
            }
        }
    }

    #[test]
    fn product_rank_sizes_convolve(a in base_spec(), b in base_spec(), n in 0usize..=7) {
        let pa = Poset::new(a.clone());
        let pb = Poset::new(b.clone());
        let prod = Poset::new(RankedPosetSpec::product(vec![a, b]).unwrap());
        let expected: usize = (0..=n).map(|i| pa.rank_size(i) * pb.rank_size(n - i)).sum();
        prop_assert_eq!(prod.rank_size(n), expected);
    }
}
