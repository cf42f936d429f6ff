//! Concrete groups behind a uniform interface.
//!
//! Multiplication convention, used everywhere in this crate: `mul(a, b)` is
//! "a first, then b" when elements are read as maps. For permutations that means
//! `mul(a, b)(i) = b(a(i))`; for prefix-exchange maps it is the composite
//! homeomorphism applying `a` and then `b`.

mod catalog;
mod perm;
mod thompson;

use std::borrow::Cow;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;

pub use catalog::{parse_group_spec, Backend};
pub use perm::{CayleyTable, Permutation, PermutationGroup, DEFAULT_ENUMERATION_CAP};
pub use thompson::{Prefix, PrefixExchangeMap, ThompsonV, DEFAULT_BALL_RADIUS, MAX_BALL_RADIUS};

/// A group with decidable equality and canonical element representatives.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync;

    fn name(&self) -> String;

    fn identity(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;

    /// Elements searched by witness constructions, identity first, in the
    /// backend's canonical order.
    fn search_elements(&self) -> Result<Cow<'_, [Self::Elem]>>;

    /// Whether [`Group::search_elements`] is all of the group. When it is not, a
    /// failed search means "bound exceeded", never "does not exist".
    fn search_is_exhaustive(&self) -> bool;

    /// Non-trivial, simple, and with trivial center.
    fn is_simple_centerless(&self) -> Result<bool>;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// `h^{-1} a h`, written `a^h`.
    fn conj(&self, a: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(h), a), h)
    }

    /// `a^{-1} b^{-1} a b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    fn pow(&self, a: &Self::Elem, exp: &BigInt) -> Self::Elem {
        let base = if exp.is_negative() { self.inv(a) } else { a.clone() };
        let mut e = exp.abs();
        let mut acc = self.identity();
        let mut sq = base;
        while !e.is_zero() {
            if e.bit(0) {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1u32;
            if !e.is_zero() {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Rejects groups the witness constructions cannot run on.
    fn check_admissible(&self) -> Result<()> {
        if self.is_simple_centerless()? {
            Ok(())
        } else {
            Err(crate::Error::NotAdmissible(format!(
                "{} must be non-trivial, simple, and have trivial center",
                self.name()
            )))
        }
    }
}

/// A finite group with a fixed canonical enumeration.
pub trait FiniteGroup: Group {
    /// All elements, identity at index 0.
    fn elements(&self) -> &[Self::Elem];

    fn index_of(&self, a: &Self::Elem) -> Option<usize>;

    /// Index-level multiplication and inversion tables.
    fn table(&self) -> Result<&CayleyTable>;

    fn order(&self) -> usize {
        self.elements().len()
    }
}
