mod common;

use std::collections::VecDeque;

use common::{elem, perm_group, rng};
use gfa_core::group::{FiniteGroup, Group, Permutation, PermutationGroup, ThompsonV};
use gfa_core::witness::{fixer_witness, SpecialSet};
use gfa_core::{
    conj_decompose, k_transitivity_witness, retraction, rewrite_to_y, sample, separation_word, transitivity_witness,
    GAutomorphism, HomPoint, XGen,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Distances from the identity in the Cayley graph with every conjugate of `u^{±1}` as an edge.
fn conjugate_distances(g: &PermutationGroup, u: &Permutation) -> Vec<usize> {
    let elems = g.elements();
    let edges: Vec<Permutation> = elems
        .iter()
        .flat_map(|h| [u.clone(), u.inverse()].map(|v| h.inverse().then(&v).then(h)))
        .collect();
    let mut dist = vec![usize::MAX; elems.len()];
    dist[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for e in &edges {
            let b = g.index_of(&elems[a].then(e)).unwrap();
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    dist
}

fn distinct_points(g: &PermutationGroup, rank: usize, k: usize, r: &mut impl Rng) -> Vec<HomPoint<Permutation>> {
    let mut out: Vec<HomPoint<Permutation>> = Vec::new();
    while out.len() < k {
        let p = sample::point(g, rank, r);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

#[test]
fn transitivity_random_a5() {
    let g = perm_group("A5");
    let mut r = rng(30);
    for _ in 0..200 {
        let (p, q) = (sample::point(&g, 2, &mut r), sample::point(&g, 2, &mut r));
        let w = transitivity_witness(&g, &p, &q).unwrap();
        assert!(w.genword().unwrap().iter().all(|x| matches!(x, XGen::MultG(..))));
        assert_eq!(w.act(&g, &p).unwrap(), q);
    }
}

#[test]
fn separation_random_a5() {
    let g = perm_group("A5");
    let mut r = rng(31);
    for _ in 0..100 {
        let size = r.gen_range(2..=4);
        let t: Vec<Permutation> = g.elements().choose_multiple(&mut r, size).cloned().collect();
        let target = loop {
            let c = sample::element(&g, &mut r);
            if !t.contains(&c) {
                break c;
            }
        };
        let sep = separation_word(&g, &t, &target).unwrap();
        for x in &t {
            assert!(g.is_identity(&sep.word.evaluate(&g, &HomPoint::new(vec![x.clone()])).unwrap()));
        }
        assert!(!g.is_identity(&sep.word.evaluate(&g, &HomPoint::new(vec![target.clone()])).unwrap()));
        assert_eq!(sep.conjugators.len(), size - 1);
    }
}

#[test]
fn decomposition_is_shortest() {
    let g = perm_group("A5");
    for u in [elem(&g, "(0 1)(2 3)"), elem(&g, "(0 1 2)"), elem(&g, "(0 1 2 3 4)")] {
        let dist = conjugate_distances(&g, &u);
        for (i, c) in g.elements().iter().enumerate() {
            let d = conj_decompose(&g, c, &u).unwrap();
            assert!(d.verify(&g));
            assert_eq!(d.factors.len(), dist[i]);
        }
    }
    let d = conj_decompose(&g, &elem(&g, "(0 1 2)"), &elem(&g, "(0 1)(2 3)")).unwrap();
    assert!(d.verify(&g));
}

#[test]
fn fixer_random_a5() {
    let g = perm_group("A5");
    let set = SpecialSet::new(&g, 2, 3).unwrap();
    let mut r = rng(32);
    let mut done = 0;
    while done < 50 {
        let p = sample::point(&g, 2, &mut r);
        if set.contains(&p) {
            continue;
        }
        let gamma = fixer_witness(&g, &set, &p).unwrap();
        assert_eq!(gamma.act(&g, &p).unwrap(), set.base);
        for q in &set.points {
            assert_eq!(gamma.act(&g, q).unwrap(), *q);
        }
        done += 1;
    }
}

#[test]
fn k_transitivity_random_a5() {
    let g = perm_group("A5");
    let mut r = rng(33);
    for k in [2, 3] {
        for _ in 0..50 {
            let src = distinct_points(&g, 2, k, &mut r);
            let dst = distinct_points(&g, 2, k, &mut r);
            let w = k_transitivity_witness(&g, &src, &dst).unwrap();
            let back = w.inverse(&g).unwrap();
            for (s, d) in src.iter().zip(&dst) {
                assert_eq!(w.act(&g, s).unwrap(), *d);
                assert_eq!(back.act(&g, d).unwrap(), *s);
            }
        }
    }
}

#[test]
fn k_transitivity_rank_three() {
    let g = perm_group("A5");
    let mut r = rng(34);
    for _ in 0..10 {
        let src = distinct_points(&g, 3, 2, &mut r);
        let dst = distinct_points(&g, 3, 2, &mut r);
        let w = k_transitivity_witness(&g, &src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert_eq!(w.act(&g, s).unwrap(), *d);
        }
    }
}

#[test]
fn retraction_properties() {
    let g = perm_group("A5");
    let phi0 = HomPoint::trivial(&g, 2);
    let mut r = rng(35);
    for _ in 0..150 {
        let word = sample::genword(&g, 2, r.gen_range(0..=8), &mut r);
        let alpha = GAutomorphism::from_genword(&g, 2, word.clone()).unwrap();
        let t = retraction(&g, &alpha);
        assert_eq!(t.act(&g, &phi0).unwrap(), phi0);
        assert_eq!(retraction(&g, &t), t);
        if alpha.act(&g, &phi0).unwrap() == phi0 {
            assert_eq!(t, alpha);
        }
        let y = rewrite_to_y(&g, 2, &word).unwrap();
        assert!(y.iter().all(|x| x.is_y()));
        assert_eq!(GAutomorphism::from_genword(&g, 2, y).unwrap(), t);
    }
}

#[test]
fn v_transitivity_and_rewriting() {
    let v = ThompsonV::new();
    let mut r = rng(36);
    for _ in 0..50 {
        let p = HomPoint::new((0..2).map(|_| sample::v_element(r.gen_range(0..4), &mut r)).collect());
        let q = HomPoint::new((0..2).map(|_| sample::v_element(r.gen_range(0..4), &mut r)).collect());
        assert_eq!(transitivity_witness(&v, &p, &q).unwrap().act(&v, &p).unwrap(), q);
        let word = sample::genword(&v, 2, r.gen_range(0..5), &mut r);
        let alpha = GAutomorphism::from_genword(&v, 2, word.clone()).unwrap();
        let y = GAutomorphism::from_genword(&v, 2, rewrite_to_y(&v, 2, &word).unwrap()).unwrap();
        assert_eq!(y, retraction(&v, &alpha));
    }
}
