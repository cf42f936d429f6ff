#![allow(dead_code)]

use gfa_core::{parse_group_spec, Backend, Group, PermutationGroup};
use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn perm_group(name: &str) -> PermutationGroup {
    match parse_group_spec(name).unwrap() {
        Backend::Perm(g) => g,
        Backend::V(_) => panic!("{name} is not a permutation group"),
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn elem<G: Group>(g: &G, text: &str) -> G::Elem {
    g.parse_elem(text).unwrap()
}
