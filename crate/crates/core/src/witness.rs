//! Constructive witnesses for the action of `Aut_G(G * F_n)` on
//! `Hom_G(G * F_n, G)`: transitivity, separation words, decompositions into
//! conjugates, pointwise-fixer witnesses, k-transitivity, and the retraction
//! onto the stabilizer of the trivial point together with the rewriting of
//! `X`-words into `Y`-words.
//!
//! Every search takes the first admissible element in the backend's canonical
//! order, so witnesses are reproducible.

use std::collections::{HashMap, VecDeque};

use crate::automorphism::{GAutomorphism, Sign, XGen};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::word::{FreeProductWord, HomPoint, Letter};

/// Separation words double in length with every excluded element.
pub const DEFAULT_MAX_EXCLUDED: usize = 16;

/// A word `w(x) ∈ G * ⟨x⟩` with `w(t) = 1` for every excluded `t` and `w(target) ≠ 1`.
#[derive(Clone)]
pub struct SeparationWord<E> {
    pub word: FreeProductWord<E>,
    pub excluded: Vec<E>,
    pub target: E,
    /// The conjugators chosen for the 2nd, 3rd, … excluded elements.
    pub conjugators: Vec<E>,
}

impl<E: std::fmt::Display + std::fmt::Debug> std::fmt::Debug for SeparationWord<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeparationWord")
            .field("word", &self.word)
            .field("excluded", &self.excluded)
            .field("target", &self.target)
            .field("conjugators", &self.conjugators)
            .finish()
    }
}

impl<E: Clone + Eq + std::fmt::Display> SeparationWord<E> {
    /// Value `w(target)`.
    pub fn value_at_target<G: Group<Elem = E>>(&self, g: &G) -> E {
        self.word
            .evaluate(g, &HomPoint::new(vec![self.target.clone()]))
            .expect("rank-1 word")
    }

    /// Re-checks both defining properties by evaluation.
    pub fn verify<G: Group<Elem = E>>(&self, g: &G) -> bool {
        let kills_excluded = self.excluded.iter().all(|t| {
            g.is_identity(
                &self
                    .word
                    .evaluate(g, &HomPoint::new(vec![t.clone()]))
                    .expect("rank-1 word"),
            )
        });
        kills_excluded && !g.is_identity(&self.value_at_target(g))
    }
}

/// Builds a word separating `excluded` from `target` with the default size cap.
pub fn separation_word<G: Group>(g: &G, excluded: &[G::Elem], target: &G::Elem) -> Result<SeparationWord<G::Elem>> {
    separation_word_capped(g, excluded, target, DEFAULT_MAX_EXCLUDED)
}

/// `w_1 = t_1⁻¹x`, then `w_i = [w_{i-1}, (t_i⁻¹x)^{h_i}]` with `h_i` the first
/// element making `w_i(target)` non-trivial. `[a, b] = a⁻¹b⁻¹ab`, `a^h = h⁻¹ah`.
pub fn separation_word_capped<G: Group>(
    g: &G,
    excluded: &[G::Elem],
    target: &G::Elem,
    max_excluded: usize,
) -> Result<SeparationWord<G::Elem>> {
    g.check_admissible()?;
    let mut set: Vec<G::Elem> = Vec::new();
    for t in excluded {
        if !set.contains(t) {
            set.push(t.clone());
        }
    }
    if set.is_empty() {
        return Err(Error::Precondition("excluded set must be non-empty".into()));
    }
    if set.contains(target) {
        return Err(Error::Precondition(format!("target {target} lies in the excluded set")));
    }
    if set.len() > max_excluded {
        return Err(Error::Precondition(format!(
            "{} excluded elements exceed the cap of {max_excluded}",
            set.len()
        )));
    }
    let x = FreeProductWord::var(1, 1)?;
    let linear = |t: &G::Elem| FreeProductWord::constant(g, 1, g.inv(t)).join(g, &x);

    let mut word = linear(&set[0]);
    let mut value = g.mul(&g.inv(&set[0]), target);
    let mut conjugators = Vec::new();
    for t in &set[1..] {
        let base = g.mul(&g.inv(t), target);
        let candidates = g.search_elements()?;
        let h = candidates
            .iter()
            .find(|h| !g.is_identity(&g.commutator(&value, &g.conj(&base, h))))
            .cloned();
        let Some(h) = h else {
            return Err(if g.search_is_exhaustive() {
                Error::NotAdmissible(format!("no conjugate of {base} fails to commute with {value}"))
            } else {
                Error::BoundExceeded(format!(
                    "no conjugator among {} searched elements separates {t}",
                    candidates.len()
                ))
            });
        };
        let factor = linear(t).conj_by(g, &h);
        word = word
            .invert(g)
            .join(g, &factor.invert(g))
            .join(g, &word)
            .join(g, &factor);
        value = g.commutator(&value, &g.conj(&base, &h));
        conjugators.push(h);
    }
    let sep = SeparationWord {
        word,
        excluded: set,
        target: target.clone(),
        conjugators,
    };
    debug_assert!(sep.verify(g));
    Ok(sep)
}

/// `target = ∏ base^{sign·h}` where `u^{+h} = h⁻¹uh` and `u^{-h} = h⁻¹u⁻¹h`.
#[derive(Clone, Debug)]
pub struct ConjDecomposition<E> {
    pub base: E,
    pub target: E,
    pub factors: Vec<(Sign, E)>,
}

impl<E: Clone + Eq> ConjDecomposition<E> {
    pub fn product<G: Group<Elem = E>>(&self, g: &G) -> E {
        self.factors.iter().fold(g.identity(), |acc, (s, h)| {
            let u = match s {
                Sign::Plus => self.base.clone(),
                Sign::Minus => g.inv(&self.base),
            };
            g.mul(&acc, &g.conj(&u, h))
        })
    }

    pub fn verify<G: Group<Elem = E>>(&self, g: &G) -> bool {
        self.product(g) == self.target
    }
}

/// Writes `target` as a shortest product of conjugates of `base` and `base⁻¹`,
/// by breadth-first search over right multiplication by those conjugates.
pub fn conj_decompose<G: FiniteGroup>(g: &G, target: &G::Elem, base: &G::Elem) -> Result<ConjDecomposition<G::Elem>> {
    if g.is_identity(base) {
        return Err(Error::Precondition("decomposition base must be non-trivial".into()));
    }
    let elems = g.elements();
    let idx = |e: &G::Elem| {
        g.index_of(e)
            .ok_or_else(|| Error::Precondition(format!("{e} is not in {}", g.name())))
    };
    let target_idx = idx(target)?;
    // First (sign, h) producing each distinct conjugate, in enumeration order.
    let mut steps: Vec<(usize, Sign, usize)> = Vec::new();
    let mut seen_step = HashMap::new();
    let base_inv = g.inv(base);
    for (hi, h) in elems.iter().enumerate() {
        for (sign, u) in [(Sign::Plus, base), (Sign::Minus, &base_inv)] {
            let s = idx(&g.conj(u, h))?;
            if let std::collections::hash_map::Entry::Vacant(v) = seen_step.entry(s) {
                v.insert(());
                steps.push((s, sign, hi));
            }
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; elems.len()];
    let mut visited = vec![false; elems.len()];
    visited[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        if a == target_idx {
            break;
        }
        for (k, &(s, _, _)) in steps.iter().enumerate() {
            let b = idx(&g.mul(&elems[a], &elems[s]))?;
            if !visited[b] {
                visited[b] = true;
                parent[b] = Some((a, k));
                queue.push_back(b);
            }
        }
    }
    if !visited[target_idx] {
        return Err(Error::Precondition(format!(
            "{target} is not in the normal closure of {base}"
        )));
    }
    let mut factors = Vec::new();
    let mut at = target_idx;
    while let Some((prev, k)) = parent[at] {
        let (_, sign, hi) = steps[k];
        factors.push((sign, elems[hi].clone()));
        at = prev;
    }
    factors.reverse();
    Ok(ConjDecomposition {
        base: base.clone(),
        target: target.clone(),
        factors,
    })
}

/// Automorphism sending `φ` to `ψ`: `x_i ↦ x_i · (φ(x_i)⁻¹ ψ(x_i))`, a product of
/// right multiplications by constants.
pub fn transitivity_witness<G: Group>(
    g: &G,
    from: &HomPoint<G::Elem>,
    to: &HomPoint<G::Elem>,
) -> Result<GAutomorphism<G::Elem>> {
    if from.rank() != to.rank() {
        return Err(Error::RankMismatch {
            expected: from.rank(),
            found: to.rank(),
        });
    }
    let rank = from.rank();
    let word = (1..=rank)
        .filter_map(|i| {
            let c = g.mul(&g.inv(from.image(i)), to.image(i));
            (!g.is_identity(&c)).then_some(XGen::MultG(i, c))
        })
        .collect();
    GAutomorphism::from_genword(g, rank, word)
}

/// The `k` points `(t_i, 1, …, 1)` with `t_i` the first `k` non-identity
/// elements, and the base point `(1, z, 1, …, 1)` with `z` the first
/// non-identity element.
#[derive(Clone)]
pub struct SpecialSet<E> {
    pub points: Vec<HomPoint<E>>,
    pub excluded: Vec<E>,
    pub z: E,
    pub base: HomPoint<E>,
}

impl<E: std::fmt::Display + std::fmt::Debug> std::fmt::Debug for SpecialSet<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpecialSet")
            .field("points", &self.points)
            .field("z", &self.z)
            .finish()
    }
}

impl<E: Clone + Eq + std::fmt::Display> SpecialSet<E> {
    pub fn new<G: FiniteGroup<Elem = E>>(g: &G, rank: usize, k: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Precondition("special sets need rank at least 2".into()));
        }
        if k == 0 || k >= g.order() {
            return Err(Error::Precondition(format!(
                "special set size {k} must lie in 1..{}",
                g.order()
            )));
        }
        let nontrivial = &g.elements()[1..];
        let excluded: Vec<E> = nontrivial[..k].to_vec();
        let points = excluded
            .iter()
            .map(|t| {
                let mut im = vec![g.identity(); rank];
                im[0] = t.clone();
                HomPoint::new(im)
            })
            .collect();
        let z = nontrivial[0].clone();
        let mut im = vec![g.identity(); rank];
        im[1] = z.clone();
        Ok(SpecialSet {
            points,
            excluded,
            z,
            base: HomPoint::new(im),
        })
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn contains(&self, p: &HomPoint<E>) -> bool {
        self.points.contains(p)
    }
}

/// Generator word for `x_target ↦ x_target · W`, where `W` does not involve `x_target`.
fn right_multiplier<G: Group>(g: &G, target: usize, w: &FreeProductWord<G::Elem>) -> Vec<XGen<G::Elem>> {
    debug_assert!(!w.involves(target));
    let mut out = Vec::new();
    for l in w.letters() {
        match l {
            Letter::Const(c) => out.push(XGen::MultG(target, c.clone())),
            Letter::Var { index, exp } => {
                let sign = if exp.sign() == num_bigint::Sign::Minus {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                let count: u64 = exp.magnitude().try_into().expect("exponent fits in u64");
                for _ in 0..count {
                    out.push(XGen::MultX {
                        i: target,
                        j: *index,
                        sign,
                        h: g.identity(),
                    });
                }
            }
        }
    }
    out
}

/// An automorphism fixing every point of `set` and sending `point` to `set.base`.
pub fn fixer_witness<G: FiniteGroup>(
    g: &G,
    set: &SpecialSet<G::Elem>,
    point: &HomPoint<G::Elem>,
) -> Result<GAutomorphism<G::Elem>> {
    g.check_admissible()?;
    let rank = set.rank();
    if point.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: point.rank(),
        });
    }
    if set.contains(point) {
        return Err(Error::Precondition(format!("{point} lies in the fixed set")));
    }
    if *point == set.base {
        return Ok(GAutomorphism::identity(rank));
    }
    let t = &set.excluded;
    let mut gamma = GAutomorphism::identity(rank);
    let extend = |gamma: &mut GAutomorphism<G::Elem>, word: Vec<XGen<G::Elem>>| -> Result<()> {
        let step = GAutomorphism::from_genword(g, rank, word)?;
        *gamma = gamma.compose(g, &step)?;
        Ok(())
    };

    // (a) move the first coordinate off the excluded set, using a non-trivial x_j.
    let cur = gamma.act(g, point)?;
    if t.contains(cur.image(1)) {
        let j = (2..=rank)
            .find(|&j| !g.is_identity(cur.image(j)))
            .expect("a point outside the set with x_1 in T has a non-trivial coordinate");
        let v = g
            .elements()
            .iter()
            .find(|v| !t.contains(&g.mul(cur.image(1), v)))
            .ok_or_else(|| Error::Precondition("excluded set covers the whole group".into()))?;
        let dec = conj_decompose(g, v, cur.image(j))?;
        let word = dec
            .factors
            .into_iter()
            .map(|(sign, h)| XGen::MultX { i: 1, j, sign, h })
            .collect();
        extend(&mut gamma, word)?;
    }

    // (b) bring the second coordinate to z with a word in x_1 that vanishes on T.
    let cur = gamma.act(g, point)?;
    let correction = g.mul(&g.inv(cur.image(2)), &set.z);
    if !g.is_identity(&correction) {
        let sep = separation_word(g, t, cur.image(1))?;
        let dec = conj_decompose(g, &correction, &sep.value_at_target(g))?;
        let w1 = sep.word.with_rank(rank)?;
        let w1_inv = w1.invert(g);
        let mut multiplier = FreeProductWord::one(rank);
        for (sign, h) in &dec.factors {
            let piece = match sign {
                Sign::Plus => &w1,
                Sign::Minus => &w1_inv,
            };
            multiplier = multiplier.join(g, &piece.conj_by(g, h));
        }
        extend(&mut gamma, right_multiplier(g, 2, &multiplier))?;
    }

    // (c) clear every other coordinate with words in conjugates of x_2.
    let cur = gamma.act(g, point)?;
    for i in (1..=rank).filter(|&i| i != 2) {
        if g.is_identity(cur.image(i)) {
            continue;
        }
        let dec = conj_decompose(g, &g.inv(cur.image(i)), &set.z)?;
        let word = dec
            .factors
            .into_iter()
            .map(|(sign, h)| XGen::MultX { i, j: 2, sign, h })
            .collect();
        extend(&mut gamma, word)?;
    }

    if gamma.act(g, point)? != set.base {
        return Err(Error::VerificationFailed(format!(
            "fixer witness does not send {point} to the base point"
        )));
    }
    for p in &set.points {
        if gamma.act(g, p)? != *p {
            return Err(Error::VerificationFailed(format!("fixer witness moves {p}")));
        }
    }
    Ok(gamma)
}

/// An automorphism sending `src[j]` to `dst[j]` for every `j`.
///
/// `k = 1` is [`transitivity_witness`]. For `k ≥ 2`, both tuples' first `k-1`
/// points are sent onto a special set `Φ` recursively, then the images of the
/// last points are joined through the base point by fixer witnesses.
pub fn k_transitivity_witness<G: FiniteGroup>(
    g: &G,
    src: &[HomPoint<G::Elem>],
    dst: &[HomPoint<G::Elem>],
) -> Result<GAutomorphism<G::Elem>> {
    let k = src.len();
    if k == 0 || dst.len() != k {
        return Err(Error::Precondition(format!(
            "need two non-empty tuples of equal length, got {} and {}",
            src.len(),
            dst.len()
        )));
    }
    let rank = src[0].rank();
    if let Some(p) = src.iter().chain(dst).find(|p| p.rank() != rank) {
        return Err(Error::RankMismatch {
            expected: rank,
            found: p.rank(),
        });
    }
    for tuple in [src, dst] {
        for (a, p) in tuple.iter().enumerate() {
            if tuple[..a].contains(p) {
                return Err(Error::Precondition(format!("duplicate point {p}")));
            }
        }
    }
    if k > g.order() {
        return Err(Error::Precondition(format!("k = {k} exceeds |G| = {}", g.order())));
    }
    if k == 1 {
        return transitivity_witness(g, &src[0], &dst[0]);
    }
    if rank < 2 {
        return Err(Error::Precondition(
            "k-transitivity for k ≥ 2 needs rank at least 2".into(),
        ));
    }
    if src == dst {
        return Ok(GAutomorphism::identity(rank));
    }
    g.check_admissible()?;

    let phi = SpecialSet::new(g, rank, k - 1)?;
    let alpha = k_transitivity_witness(g, &src[..k - 1], &phi.points)?;
    let beta = k_transitivity_witness(g, &dst[..k - 1], &phi.points)?;
    let p = alpha.act(g, &src[k - 1])?;
    let q = beta.act(g, &dst[k - 1])?;
    let gamma_p = fixer_witness(g, &phi, &p)?;
    let gamma_q = fixer_witness(g, &phi, &q)?;
    let result = alpha
        .compose(g, &gamma_p)?
        .compose(g, &gamma_q.inverse(g)?)?
        .compose(g, &beta.inverse(g)?)?;

    for (s, d) in src.iter().zip(dst) {
        if result.act(g, s)? != *d {
            return Err(Error::VerificationFailed(format!("witness does not send {s} to {d}")));
        }
    }
    Ok(result)
}

/// Replaces every image `α(x_i)` by its `⟪F_n⟫`-part. The result stabilizes the
/// trivial point and equals `α` when `α` already does. Carries no generator
/// word; see [`retraction_with_genword`].
pub fn retraction<G: Group>(g: &G, alpha: &GAutomorphism<G::Elem>) -> GAutomorphism<G::Elem> {
    let images = alpha.images().iter().map(|w| w.normal_part(g)).collect();
    GAutomorphism::from_images(alpha.rank(), images).expect("ranks preserved")
}

/// [`retraction`] with its generator word produced by [`rewrite_to_y`].
pub fn retraction_with_genword<G: Group>(g: &G, alpha: &GAutomorphism<G::Elem>) -> Result<GAutomorphism<G::Elem>> {
    let word = alpha.genword().ok_or(Error::MissingGenword)?;
    let rewritten = GAutomorphism::from_genword(g, alpha.rank(), rewrite_to_y(g, alpha.rank(), word)?)?;
    if rewritten != retraction(g, alpha) {
        return Err(Error::VerificationFailed(
            "rewritten word disagrees with the retraction".into(),
        ));
    }
    Ok(rewritten)
}

/// Rewrites an `X`-word for `α` into a word over `Y` (no right multiplications by
/// constants) for the retraction of `α`.
///
/// Scans left to right keeping `T(α)` for the prefix `α` read so far; with
/// `g_i` the `G`-part of `α(x_i)`, appending `ξ` appends:
/// * permutation or conjugation: `ξ`;
/// * `x_i ↦ x_i⁻¹`: `ξ` then `x_i ↦ g_i⁻¹ x_i g_i`;
/// * `x_i ↦ x_i h⁻¹x_j h`: `x_i ↦ x_i k⁻¹x_j k` with `k = h g_i⁻¹`;
/// * `x_i ↦ x_i h⁻¹x_j⁻¹h`: `x_i ↦ x_i k⁻¹x_j⁻¹k` with `k = g_j h g_i⁻¹`;
/// * `x_i ↦ x_i g`: nothing.
pub fn rewrite_to_y<G: Group>(g: &G, rank: usize, xword: &[XGen<G::Elem>]) -> Result<Vec<XGen<G::Elem>>> {
    let mut parts = HomPoint::trivial(g, rank);
    let mut out = Vec::new();
    for xi in xword {
        xi.validate(rank)?;
        match xi {
            XGen::Perm(_) | XGen::Conj(..) => out.push(xi.clone()),
            XGen::Invert(i) => {
                out.push(xi.clone());
                let gi = parts.image(*i);
                if !g.is_identity(gi) {
                    out.push(XGen::Conj(*i, gi.clone()));
                }
            }
            XGen::MultX { i, j, sign, h } => {
                let gi_inv = g.inv(parts.image(*i));
                let k = match sign {
                    Sign::Plus => g.mul(h, &gi_inv),
                    Sign::Minus => g.mul(&g.mul(parts.image(*j), h), &gi_inv),
                };
                out.push(XGen::MultX {
                    i: *i,
                    j: *j,
                    sign: *sign,
                    h: k,
                });
            }
            XGen::MultG(..) => {}
        }
        parts = GAutomorphism::from_xgen(g, rank, xi.clone())?.act(g, &parts)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_group_spec, Backend, Permutation, PermutationGroup};

    fn group(name: &str) -> PermutationGroup {
        match parse_group_spec(name).unwrap() {
            Backend::Perm(g) => g,
            _ => unreachable!(),
        }
    }

    fn p(g: &PermutationGroup, s: &str) -> Permutation {
        g.parse_elem(s).unwrap()
    }

    #[test]
    fn single_excluded_is_linear() {
        let g = group("A5");
        let t = p(&g, "(0 1 2 3 4)");
        let sep = separation_word(&g, std::slice::from_ref(&t), &p(&g, "(0 1)(2 3)")).unwrap();
        assert_eq!(sep.word.to_string(), "c{(0 4 3 2 1)} * x1");
        assert!(sep.verify(&g));
        assert!(sep.conjugators.is_empty());
    }

    #[test]
    fn separation_preconditions() {
        let g = group("A5");
        let t = p(&g, "(0 1 2)");
        assert!(matches!(
            separation_word(&g, std::slice::from_ref(&t), &t),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(separation_word(&g, &[], &t), Err(Error::Precondition(_))));
        let s5 = group("S5");
        let t = p(&s5, "(0 1)");
        assert!(matches!(
            separation_word(&s5, &[t], &p(&s5, "(0 1 2)")),
            Err(Error::NotAdmissible(_))
        ));
        let many: Vec<_> = g.elements()[1..5].to_vec();
        assert!(separation_word_capped(&g, &many, &g.elements()[10], 3).is_err());
    }

    #[test]
    fn duplicates_are_dropped() {
        let g = group("A5");
        let t = p(&g, "(0 1 2)");
        let sep = separation_word(&g, &[t.clone(), t.clone()], &p(&g, "(2 3 4)")).unwrap();
        assert_eq!(sep.excluded.len(), 1);
    }

    #[test]
    fn decomposition_trivial_cases() {
        let g = group("A5");
        let u = p(&g, "(0 1)(2 3)");
        assert!(conj_decompose(&g, &g.identity(), &u).unwrap().factors.is_empty());
        let d = conj_decompose(&g, &u, &u).unwrap();
        assert_eq!(d.factors, vec![(Sign::Plus, g.identity())]);
        assert!(matches!(
            conj_decompose(&g, &u, &g.identity()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn decomposition_outside_normal_closure() {
        let a4 = group("A4");
        let u = p(&a4, "(0 1)(2 3)");
        assert!(conj_decompose(&a4, &p(&a4, "(0 1 2)"), &u).is_err());
    }

    #[test]
    fn transitivity_examples() {
        let g = group("A5");
        let a = p(&g, "(0 1 2)");
        let b = p(&g, "(2 3 4)");
        let phi = HomPoint::new(vec![a.clone(), b.clone()]);
        assert!(transitivity_witness(&g, &phi, &phi).unwrap().is_identity());
        let phi0 = HomPoint::trivial(&g, 2);
        let w = transitivity_witness(&g, &phi0, &phi).unwrap();
        assert_eq!(w.genword().unwrap(), &[XGen::MultG(1, a), XGen::MultG(2, b)]);
        assert_eq!(w.act(&g, &phi0).unwrap(), phi);
    }

    #[test]
    fn fixer_base_point_is_identity() {
        let g = group("A5");
        let set = SpecialSet::new(&g, 2, 2).unwrap();
        assert!(fixer_witness(&g, &set, &set.base.clone()).unwrap().is_identity());
        assert!(fixer_witness(&g, &set, &set.points[0].clone()).is_err());
    }

    #[test]
    fn fixer_single_point() {
        let g = group("A5");
        let set = SpecialSet::new(&g, 2, 1).unwrap();
        for target in g.elements().iter().filter(|e| !set.excluded.contains(e)) {
            let phi = HomPoint::new(vec![target.clone(), g.identity()]);
            let gamma = fixer_witness(&g, &set, &phi).unwrap();
            assert_eq!(gamma.act(&g, &phi).unwrap(), set.base);
            assert_eq!(gamma.act(&g, &set.points[0]).unwrap(), set.points[0]);
        }
    }

    #[test]
    fn fixer_rank_three_step_a() {
        let g = group("A5");
        let set = SpecialSet::new(&g, 3, 3).unwrap();
        // x_1 in T, only x_3 non-trivial: exercises the move off T through x_3.
        let phi = HomPoint::new(vec![set.excluded[1].clone(), g.identity(), p(&g, "(0 1 2 3 4)")]);
        let gamma = fixer_witness(&g, &set, &phi).unwrap();
        assert_eq!(gamma.act(&g, &phi).unwrap(), set.base);
        for q in &set.points {
            assert_eq!(gamma.act(&g, q).unwrap(), *q);
        }
    }

    #[test]
    fn ktrans_delegates_and_rejects() {
        let g = group("A5");
        let a = HomPoint::new(vec![p(&g, "(0 1 2)"), g.identity()]);
        let b = HomPoint::new(vec![g.identity(), p(&g, "(1 2 3)")]);
        let one = k_transitivity_witness(&g, std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap();
        let direct = transitivity_witness(&g, &a, &b).unwrap();
        assert_eq!(one.genword(), direct.genword());
        assert!(k_transitivity_witness(&g, &[a.clone(), a.clone()], &[a.clone(), b.clone()]).is_err());
        assert!(
            k_transitivity_witness(&g, &[a.clone(), b.clone()], &[a.clone(), b.clone()])
                .unwrap()
                .is_identity()
        );
        assert!(k_transitivity_witness(&g, std::slice::from_ref(&a), &[]).is_err());
    }

    #[test]
    fn retraction_examples() {
        let g = group("A5");
        let c = p(&g, "(0 1 2)");
        let mg = GAutomorphism::from_xgen(&g, 2, XGen::MultG(1, c.clone())).unwrap();
        assert!(retraction(&g, &mg).is_identity());
        let cj = GAutomorphism::from_xgen(&g, 2, XGen::Conj(1, c.clone())).unwrap();
        assert_eq!(retraction(&g, &cj), cj);
        // x_1 ↦ c x_1 is Conj(1, c⁻¹) ∘ MultG(1, c); its retraction is x_1 ↦ c x_1 c⁻¹.
        let left =
            GAutomorphism::from_genword(&g, 2, vec![XGen::Conj(1, g.inv(&c)), XGen::MultG(1, c.clone())]).unwrap();
        assert_eq!(
            left.image(1),
            &FreeProductWord::parse(&g, 2, "c{(0 1 2)} * x1").unwrap()
        );
        assert_eq!(
            retraction(&g, &left).image(1),
            &FreeProductWord::parse(&g, 2, "c{(0 1 2)} * x1 * c{(0 2 1)}").unwrap()
        );
    }

    #[test]
    fn rewrite_examples() {
        let g = group("A5");
        let c = p(&g, "(0 1 2)");
        assert!(rewrite_to_y(&g, 2, &[XGen::MultG(1, c.clone())]).unwrap().is_empty());
        assert_eq!(
            rewrite_to_y(&g, 2, &[XGen::Conj(1, c.clone())]).unwrap(),
            vec![XGen::Conj(1, c.clone())]
        );
    }

    #[test]
    fn rewrite_inverse_multiplication_needs_both_parts() {
        // multg(1){a} multg(2){b} multx(1,2,-): the conjugator must involve b.
        let g = group("A5");
        let a = p(&g, "(0 1 2)");
        let b = p(&g, "(2 3 4)");
        let word = vec![
            XGen::MultG(1, a),
            XGen::MultG(2, b),
            XGen::MultX {
                i: 1,
                j: 2,
                sign: Sign::Minus,
                h: g.identity(),
            },
        ];
        let alpha = GAutomorphism::from_genword(&g, 2, word.clone()).unwrap();
        let rewritten = GAutomorphism::from_genword(&g, 2, rewrite_to_y(&g, 2, &word).unwrap()).unwrap();
        assert_eq!(rewritten, retraction(&g, &alpha));
        assert!(retraction_with_genword(&g, &alpha).is_ok());
    }
}
