//! Arithmetic in free products `G * F_n`, the group of `G`-automorphisms with its
//! generating set, the precomposition action on `Hom_G(G * F_n, G)`, and
//! witness-producing constructions for that action.
//!
//! Backends: finite permutation groups ([`PermutationGroup`]) and Thompson's
//! group V as prefix-exchange maps ([`ThompsonV`]).

pub mod automorphism;
pub mod certificate;
pub mod error;
pub mod group;
pub mod identities;
pub mod orbit;
pub mod sample;
pub mod witness;
pub mod word;

pub use automorphism::{format_genword, parse_genword, GAutomorphism, Side, Sign, XGen};
pub use certificate::{Certificate, Check};
pub use error::{Error, Result};
pub use group::{
    parse_group_spec, Backend, CayleyTable, FiniteGroup, Group, Permutation, PermutationGroup, Prefix,
    PrefixExchangeMap, ThompsonV,
};
pub use identities::{
    faithfulness_witness, is_mixed_identity, kernel_element, Faithfulness, KernelElement, MixedIdentityVerdict,
};
pub use orbit::{orbits_on_pairs, orbits_on_points, OrbitConfig, OrbitPartition, OrbitReport, PointCodec};
pub use witness::{
    conj_decompose, fixer_witness, k_transitivity_witness, retraction, retraction_with_genword, rewrite_to_y,
    separation_word, transitivity_witness, ConjDecomposition, SeparationWord, SpecialSet,
};
pub use word::{FreeProductWord, HomPoint, Letter, Syllable};
