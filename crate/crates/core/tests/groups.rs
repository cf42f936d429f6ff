mod common;

use std::collections::{HashSet, VecDeque};

use common::{perm_group, rng};
use gfa_core::group::{FiniteGroup, Group, Permutation, PrefixExchangeMap, ThompsonV};
use gfa_core::sample;
use proptest::prelude::*;
use rand::Rng;

/// Normal closure of a single element by brute force over the element list.
fn normal_closure_size(elems: &[Permutation], a: &Permutation) -> usize {
    let conjugates: HashSet<Permutation> = elems.iter().map(|h| h.inverse().then(a).then(h)).collect();
    let mut seen = HashSet::from([Permutation::identity(a.degree())]);
    let mut queue: VecDeque<Permutation> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for c in &conjugates {
            let y = x.then(c);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn simple_by_oracle(name: &str) -> bool {
    let g = perm_group(name);
    let elems = g.elements();
    elems.len() > 1 && elems[1..].iter().all(|a| normal_closure_size(elems, a) == elems.len())
}

#[test]
fn simplicity_agrees_with_normal_closure_oracle() {
    for name in ["A5", "A6", "S5", "A4", "C5", "C6", "D5", "S3", "trivial"] {
        let g = perm_group(name);
        assert_eq!(g.check_simplicity(), simple_by_oracle(name), "{name}");
    }
}

#[test]
fn a5_axioms_exhaustive_on_table() {
    let g = perm_group("A5");
    let t = g.table().unwrap();
    let n = g.order() as u32;
    for a in 0..n {
        assert_eq!(t.mul(a, t.inv(a)), 0);
        for b in 0..n {
            let ab = g.mul(&g.elements()[a as usize], &g.elements()[b as usize]);
            assert_eq!(g.index_of(&ab), Some(t.mul(a, b) as usize));
        }
    }
}

#[test]
fn v_axioms_on_random_triples() {
    let v = ThompsonV::new();
    let mut r = rng(1);
    for _ in 0..1000 {
        let [a, b, c] = [0, 0, 0].map(|_| {
            let len = r.gen_range(0..6);
            sample::v_element(len, &mut r)
        });
        assert_eq!(v.mul(&v.mul(&a, &b), &c), v.mul(&a, &v.mul(&b, &c)));
        assert_eq!(v.mul(&a, &v.identity()), a);
        assert_eq!(v.mul(&v.identity(), &a), a);
        assert!(v.is_identity(&v.mul(&a, &v.inv(&a))));
        assert!(a.is_reduced());
    }
}

#[test]
fn v_action_matches_composition() {
    let mut r = rng(2);
    let mut checked = 0;
    for _ in 0..50 {
        let a = sample::v_element(r.gen_range(1..6), &mut r);
        let b = sample::v_element(r.gen_range(1..6), &mut r);
        let ab = a.then(&b);
        for _ in 0..50 {
            let s = sample::bits(24, &mut r);
            if let (Some(x), Some(y)) = (a.apply(&s).and_then(|t| b.apply(&t)), ab.apply(&s)) {
                assert_eq!(x, y);
                checked += 1;
            }
            assert_eq!(a.apply(&s).map(|t| a.inverse().apply(&t)), Some(Some(s.clone())));
        }
    }
    assert!(checked > 2000, "{checked}");
}

#[test]
fn pinned_v_generators() {
    let texts: Vec<String> = PrefixExchangeMap::standard_generators()
        .iter()
        .map(|g| g.to_string())
        .collect();
    assert_eq!(
        texts,
        [
            "V{00,01,1 -> 0,10,11}",
            "V{0,100,101,11 -> 0,10,110,111}",
            "V{0,10,11 -> 11,0,10}",
            "V{0,10,11 -> 10,0,11}",
        ]
    );
}

fn v_strategy() -> impl Strategy<Value = PrefixExchangeMap> {
    prop::collection::vec(0usize..8, 0..7).prop_map(|word| {
        let alphabet = ThompsonV::alphabet();
        word.iter()
            .fold(PrefixExchangeMap::identity(), |acc, &i| acc.then(&alphabet[i]))
    })
}

proptest! {
    #[test]
    fn v_text_round_trip(a in v_strategy()) {
        prop_assert_eq!(PrefixExchangeMap::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn v_inverse_reverses_products(a in v_strategy(), b in v_strategy()) {
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }
}
