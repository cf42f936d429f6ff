//! Mixed identities (laws with constants), kernel elements of the action on
//! `Hom_G(G * F_n, G)` for finite `G`, and faithfulness witnesses.

use rayon::prelude::*;

use crate::automorphism::{GAutomorphism, Sign, XGen};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::orbit::state_cap;
use crate::word::{FreeProductWord, HomPoint};

/// Outcome of an exhaustive or bounded substitution scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedIdentityVerdict<E: std::fmt::Display> {
    pub word: FreeProductWord<E>,
    pub is_identity: bool,
    /// Lexicographically first substitution with a non-trivial value.
    pub counterexample: Option<HomPoint<E>>,
    pub points_searched: u64,
}

/// Calls `pred` on substitutions drawn from the group's search elements in
/// lexicographic order (first coordinate most significant) and returns the
/// first accepted one, together with the number of substitutions in the space.
pub(crate) fn first_point<G, F>(g: &G, rank: usize, pred: F) -> Result<(Option<HomPoint<G::Elem>>, u64)>
where
    G: Group,
    F: Fn(&HomPoint<G::Elem>) -> bool + Sync,
{
    let elems = g.search_elements()?;
    let m = elems.len() as u64;
    let cap = state_cap(crate::orbit::DEFAULT_POINT_CAP);
    let total = (0..rank)
        .try_fold(1u64, |acc, _| acc.checked_mul(m))
        .filter(|&t| t <= cap);
    let Some(total) = total else {
        return Err(Error::CapExceeded {
            what: format!("{m}^{rank} substitutions"),
            cap,
        });
    };
    let decode = |mut idx: u64| {
        let mut im = vec![elems[0].clone(); rank];
        for slot in im.iter_mut().rev() {
            *slot = elems[(idx % m) as usize].clone();
            idx /= m;
        }
        HomPoint::new(im)
    };
    let found = (0..total).into_par_iter().find_first(|&idx| pred(&decode(idx)));
    Ok((found.map(decode), total))
}

/// Decides whether `w` is killed by every `G`-homomorphism `G * F_n → G`.
///
/// Exhaustive for finite groups. For a group searched through a finite ball,
/// finding no counterexample is reported as [`Error::BoundExceeded`], never as a
/// verdict.
pub fn is_mixed_identity<G: Group>(g: &G, w: &FreeProductWord<G::Elem>) -> Result<MixedIdentityVerdict<G::Elem>> {
    if w.is_one() {
        return Err(Error::Precondition(
            "the trivial word is not a candidate mixed identity".into(),
        ));
    }
    let rank = w.rank().max(1);
    let w = w.with_rank(rank)?;
    let (found, total) = first_point(g, rank, |p| !g.is_identity(&w.evaluate(g, p).expect("rank checked")))?;
    match found {
        Some(p) => Ok(MixedIdentityVerdict {
            word: w,
            is_identity: false,
            counterexample: Some(p),
            points_searched: total,
        }),
        None if g.search_is_exhaustive() => Ok(MixedIdentityVerdict {
            word: w,
            is_identity: true,
            counterexample: None,
            points_searched: total,
        }),
        None => Err(Error::BoundExceeded(format!(
            "no counterexample among {total} substitutions from {}",
            g.name()
        ))),
    }
}

/// A non-trivial automorphism acting trivially on `Hom_G(G * F_n, G)`.
#[derive(Clone, Debug)]
pub struct KernelElement<E: std::fmt::Display> {
    pub automorphism: GAutomorphism<E>,
    /// The law `x_2^L` multiplying `x_1`.
    pub law: FreeProductWord<E>,
    pub exponent: u64,
    pub points_checked: u64,
}

/// `x_1 ↦ x_1 x_2^L` with `L` the exponent of `G`, checked against every point.
pub fn kernel_element<G: FiniteGroup>(g: &G, rank: usize) -> Result<KernelElement<G::Elem>> {
    if rank < 2 {
        return Err(Error::Precondition(
            "rank 1 has no kernel: the action is faithful when the center is trivial".into(),
        ));
    }
    let exponent = group_exponent(g);
    let law = FreeProductWord::var_pow(rank, 2, exponent)?;
    let one_var = FreeProductWord::var_pow(1, 1, exponent)?;
    if !is_mixed_identity(g, &one_var)?.is_identity {
        return Err(Error::VerificationFailed(format!(
            "x^{exponent} is not a law of {}",
            g.name()
        )));
    }
    let step = XGen::MultX {
        i: 1,
        j: 2,
        sign: Sign::Plus,
        h: g.identity(),
    };
    let automorphism = GAutomorphism::from_genword(g, rank, vec![step; exponent as usize])?;
    if automorphism.is_identity() {
        return Err(Error::VerificationFailed("kernel element is the identity".into()));
    }
    let (moved, total) = first_point(g, rank, |p| automorphism.act(g, p).expect("rank checked") != *p)?;
    if let Some(p) = moved {
        return Err(Error::VerificationFailed(format!("kernel element moves {p}")));
    }
    Ok(KernelElement {
        automorphism,
        law,
        exponent,
        points_checked: total,
    })
}

/// Least common multiple of the element orders.
pub fn group_exponent<G: FiniteGroup>(g: &G) -> u64 {
    fn order<G: FiniteGroup>(g: &G, a: &G::Elem) -> u64 {
        let mut k = 1;
        let mut x = a.clone();
        while !g.is_identity(&x) {
            x = g.mul(&x, a);
            k += 1;
        }
        k
    }
    g.elements()
        .iter()
        .fold(1u64, |acc, a| num_integer::lcm(acc, order(g, a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Faithfulness<E: std::fmt::Display> {
    /// A point moved by the automorphism.
    Witness(HomPoint<E>),
    /// Every point is fixed; only returned after an exhaustive scan.
    InKernel { points_checked: u64 },
}

/// Finds a point `φ` with `φ · α ≠ φ`, searching for each moved generator `x_i`
/// a substitution under which `x_i⁻¹ α(x_i)` is non-trivial.
pub fn faithfulness_witness<G: Group>(g: &G, alpha: &GAutomorphism<G::Elem>) -> Result<Faithfulness<G::Elem>> {
    if alpha.is_identity() {
        return Err(Error::Precondition("the identity moves no point".into()));
    }
    let rank = alpha.rank();
    let mut total = 0;
    for i in 1..=rank {
        let xi = FreeProductWord::var(rank, i)?;
        if *alpha.image(i) == xi {
            continue;
        }
        let defect = xi.invert(g).join(g, alpha.image(i));
        let (found, searched) = first_point(g, rank, |p| {
            !g.is_identity(&defect.evaluate(g, p).expect("rank checked"))
        })?;
        total = searched;
        if let Some(p) = found {
            if alpha.act(g, &p)? == p {
                return Err(Error::VerificationFailed(format!("{p} is not moved")));
            }
            return Ok(Faithfulness::Witness(p));
        }
    }
    if g.search_is_exhaustive() {
        Ok(Faithfulness::InKernel { points_checked: total })
    } else {
        Err(Error::BoundExceeded(format!(
            "no moved point among {total} substitutions from {}",
            g.name()
        )))
    }
}
