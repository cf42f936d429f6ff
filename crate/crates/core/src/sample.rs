//! Random inputs for tests and benchmarks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::automorphism::{Sign, XGen};
use crate::group::{Group, PrefixExchangeMap, ThompsonV};
use crate::word::{FreeProductWord, HomPoint, Letter};

/// A uniform element of the group's search set.
pub fn element<G: Group, R: Rng + ?Sized>(g: &G, rng: &mut R) -> G::Elem {
    g.search_elements()
        .expect("search set")
        .choose(rng)
        .expect("non-empty")
        .clone()
}

pub fn non_identity<G: Group, R: Rng + ?Sized>(g: &G, rng: &mut R) -> G::Elem {
    loop {
        let e = element(g, rng);
        if !g.is_identity(&e) {
            return e;
        }
    }
}

pub fn point<G: Group, R: Rng + ?Sized>(g: &G, rank: usize, rng: &mut R) -> HomPoint<G::Elem> {
    HomPoint::new((0..rank).map(|_| element(g, rng)).collect())
}

/// A product of `len` random letters: constants, or variables to powers in ±1..=±3.
pub fn word<G: Group, R: Rng + ?Sized>(g: &G, rank: usize, len: usize, rng: &mut R) -> FreeProductWord<G::Elem> {
    let letters = (0..len).map(|_| {
        if rng.gen_bool(0.5) {
            Letter::Const(element(g, rng))
        } else {
            let mut e: i64 = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) {
                e = -e;
            }
            Letter::Var {
                index: rng.gen_range(1..=rank),
                exp: BigInt::from(e),
            }
        }
    });
    FreeProductWord::reduce(g, rank, letters.collect::<Vec<_>>()).expect("indices in range")
}

pub fn xgen<G: Group, R: Rng + ?Sized>(g: &G, rank: usize, rng: &mut R) -> XGen<G::Elem> {
    let i = rng.gen_range(1..=rank);
    let kinds = if rank >= 2 { 5 } else { 4 };
    match rng.gen_range(0..kinds) {
        0 => {
            let mut sigma: Vec<usize> = (1..=rank).collect();
            sigma.shuffle(rng);
            XGen::Perm(sigma)
        }
        1 => XGen::Invert(i),
        2 => XGen::Conj(i, element(g, rng)),
        3 => XGen::MultG(i, element(g, rng)),
        _ => {
            let mut j = rng.gen_range(1..rank);
            if j >= i {
                j += 1;
            }
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            XGen::MultX {
                i,
                j,
                sign,
                h: element(g, rng),
            }
        }
    }
}

pub fn genword<G: Group, R: Rng + ?Sized>(g: &G, rank: usize, len: usize, rng: &mut R) -> Vec<XGen<G::Elem>> {
    (0..len).map(|_| xgen(g, rank, rng)).collect()
}

/// A product of `len` standard generators and their inverses.
pub fn v_element<R: Rng + ?Sized>(len: usize, rng: &mut R) -> PrefixExchangeMap {
    let alphabet = ThompsonV::alphabet();
    (0..len).fold(PrefixExchangeMap::identity(), |acc, _| {
        acc.then(alphabet.choose(rng).expect("non-empty"))
    })
}

pub fn bits<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..=1)).collect()
}
