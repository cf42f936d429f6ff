mod common;

use common::{perm_group, rng};
use gfa_core::group::{Group, ThompsonV};
use gfa_core::{sample, FreeProductWord, HomPoint, Letter};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// Evaluation by multiplying letters one at a time, without the library's normal form.
fn naive_evaluate<G: Group>(g: &G, w: &FreeProductWord<G::Elem>, p: &HomPoint<G::Elem>) -> G::Elem {
    let mut acc = g.identity();
    for l in w.letters() {
        match l {
            Letter::Const(c) => acc = g.mul(&acc, c),
            Letter::Var { index, exp } => {
                let x = p.image(*index);
                let step = if *exp < BigInt::from(0) { g.inv(x) } else { x.clone() };
                let mut k = exp.magnitude().clone();
                while k > 0u32.into() {
                    acc = g.mul(&acc, &step);
                    k -= 1u32;
                }
            }
        }
    }
    acc
}

/// `t(w⁻¹) = π(w)⁻¹ · t(w)⁻¹ · π(w)`.
fn inversion_identity<G: Group>(g: &G, w: &FreeProductWord<G::Elem>) -> bool {
    let pi = w.projection(g);
    let pi_inv = FreeProductWord::constant(g, w.rank(), g.inv(&pi));
    let rhs = pi_inv
        .concat(g, &w.normal_part(g).invert(g))
        .unwrap()
        .concat(g, &FreeProductWord::constant(g, w.rank(), pi))
        .unwrap();
    w.invert(g).normal_part(g) == rhs
}

#[test]
fn inversion_identity_on_a5() {
    let g = perm_group("A5");
    let mut r = rng(10);
    for _ in 0..500 {
        let len = r.gen_range(0..12);
        let w = sample::word(&g, 3, len, &mut r);
        assert!(inversion_identity(&g, &w), "{w}");
    }
}

#[test]
fn inversion_identity_on_v() {
    let v = ThompsonV::new();
    let mut r = rng(11);
    for _ in 0..500 {
        let len = r.gen_range(0..10);
        let w = sample::word(&v, 2, len, &mut r);
        assert!(inversion_identity(&v, &w), "{w}");
    }
}

#[test]
fn evaluation_agrees_with_naive_product() {
    let g = perm_group("A5");
    let mut r = rng(12);
    for _ in 0..300 {
        let w = sample::word(&g, 2, 10, &mut r);
        let p = sample::point(&g, 2, &mut r);
        assert_eq!(w.evaluate(&g, &p).unwrap(), naive_evaluate(&g, &w, &p));
    }
}

#[test]
fn normal_part_lies_in_kernel_of_projection() {
    let g = perm_group("A5");
    let mut r = rng(13);
    for _ in 0..300 {
        let w = sample::word(&g, 2, 10, &mut r);
        let t = w.normal_part(&g);
        assert!(g.is_identity(&t.projection(&g)));
        assert!(g.is_identity(&t.evaluate(&g, &HomPoint::trivial(&g, 2)).unwrap()));
        let back = t
            .concat(&g, &FreeProductWord::constant(&g, 2, w.projection(&g)))
            .unwrap();
        assert_eq!(back, w);
    }
}

fn word_strategy() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 0usize..14)
}

proptest! {
    #[test]
    fn evaluation_is_a_homomorphism((seed, len) in word_strategy(), (seed2, len2) in word_strategy()) {
        let g = perm_group("A5");
        let mut r = rng(seed);
        let u = sample::word(&g, 2, len, &mut r);
        let v = sample::word(&g, 2, len2, &mut rng(seed2));
        let p = sample::point(&g, 2, &mut r);
        let uv = u.concat(&g, &v).unwrap();
        prop_assert!(uv.is_normal_form(&g));
        prop_assert_eq!(uv.evaluate(&g, &p).unwrap(), g.mul(&u.evaluate(&g, &p).unwrap(), &v.evaluate(&g, &p).unwrap()));
        prop_assert_eq!(FreeProductWord::parse(&g, 2, &uv.to_string()).unwrap(), uv);
    }
}
