//! `G`-automorphisms of `G * F_n` built from the generating set `X`.
//!
//! Composition convention: `α ∘ β` applies `β` first, so `(α ∘ β)(w) = α(β(w))`.
//! A generator word `[ξ₁, ξ₂, …, ξₘ]` denotes `ξ₁ ∘ ξ₂ ∘ ⋯ ∘ ξₘ` (rightmost applied
//! first), which makes concatenation of generator words equal to composition.
//!
//! Automorphisms act on the right of [`HomPoint`]s by precomposition:
//! `φ · α = φ ∘ α`, hence `(φ · α) · β = φ · (α ∘ β)`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{parse_err, Error, Result};
use crate::group::Group;
use crate::word::{FreeProductWord, HomPoint, Letter};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn exponent(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A generator from `X`. Every variant fixes `G` and all `x_k` not mentioned.
///
/// Indices are 1-based. The variants generalise the five families of `X` to any
/// index; [`XGen::expand_literal`] rewrites each into the literal families, which
/// only touch `x_1` (and `x_2` for the multiplication family).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum XGen<E> {
    /// `x_k ↦ x_{σ(k)}`; holds `[σ(1), …, σ(n)]`.
    Perm(Vec<usize>),
    /// `x_i ↦ x_i⁻¹`.
    Invert(usize),
    /// `x_i ↦ g⁻¹ x_i g`.
    Conj(usize, E),
    /// `x_i ↦ x_i · (h⁻¹ x_j^{±1} h)`, `i ≠ j`.
    MultX { i: usize, j: usize, sign: Sign, h: E },
    /// `x_i ↦ x_i g`.
    MultG(usize, E),
}

fn transposition(rank: usize, a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (1..=rank).collect();
    s.swap(a - 1, b - 1);
    s
}

fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sigma.len()];
    for (k, &s) in sigma.iter().enumerate() {
        out[s - 1] = k + 1;
    }
    out
}

impl<E: Clone + Eq + fmt::Display> XGen<E> {
    pub fn validate(&self, rank: usize) -> Result<()> {
        let check = |i: usize| {
            if i == 0 || i > rank {
                Err(Error::IndexOutOfRange { index: i, rank })
            } else {
                Ok(())
            }
        };
        match self {
            XGen::Perm(sigma) => {
                if sigma.len() != rank {
                    return Err(Error::RankMismatch {
                        expected: rank,
                        found: sigma.len(),
                    });
                }
                let mut seen = vec![false; rank];
                for &s in sigma {
                    check(s)?;
                    if std::mem::replace(&mut seen[s - 1], true) {
                        return Err(parse_err(format!("sigma repeats {s}")));
                    }
                }
                Ok(())
            }
            XGen::Invert(i) | XGen::Conj(i, _) | XGen::MultG(i, _) => check(*i),
            XGen::MultX { i, j, .. } => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::Precondition(format!(
                        "multx needs distinct indices, got {i},{j}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Whether this generator lies in `Y`, i.e. is not a right multiplication by a constant.
    pub fn is_y(&self) -> bool {
        !matches!(self, XGen::MultG(..))
    }

    pub fn inverse<G: Group<Elem = E>>(&self, g: &G) -> XGen<E> {
        match self {
            XGen::Perm(sigma) => XGen::Perm(invert_perm(sigma)),
            XGen::Invert(i) => XGen::Invert(*i),
            XGen::Conj(i, c) => XGen::Conj(*i, g.inv(c)),
            XGen::MultX { i, j, sign, h } => XGen::MultX {
                i: *i,
                j: *j,
                sign: sign.flip(),
                h: h.clone(),
            },
            XGen::MultG(i, c) => XGen::MultG(*i, g.inv(c)),
        }
    }

    /// Image of `x_k`.
    pub fn image<G: Group<Elem = E>>(&self, g: &G, rank: usize, k: usize) -> FreeProductWord<E> {
        let x = |i: usize| FreeProductWord::var(rank, i).expect("validated index");
        match self {
            XGen::Perm(sigma) => x(sigma[k - 1]),
            XGen::Invert(i) if *i == k => x(k).invert(g),
            XGen::Conj(i, c) if *i == k => x(k).conj_by(g, c),
            XGen::MultX { i, j, sign, h } if *i == k => {
                let tail = FreeProductWord::var_pow(rank, *j, sign.exponent()).expect("validated index");
                x(k).join(g, &tail.conj_by(g, h))
            }
            XGen::MultG(i, c) if *i == k => x(k).join(g, &FreeProductWord::constant(g, rank, c.clone())),
            _ => x(k),
        }
    }

    /// Whether this is one of the literal generators: any basis permutation,
    /// `x_1 ↦ x_1⁻¹`, `x_1 ↦ g⁻¹x_1g`, `x_1 ↦ x_1x_2^{±1}`, or `x_1 ↦ x_1g`.
    pub fn is_literal<G: Group<Elem = E>>(&self, g: &G) -> bool {
        match self {
            XGen::Perm(_) => true,
            XGen::Invert(i) | XGen::Conj(i, _) | XGen::MultG(i, _) => *i == 1,
            XGen::MultX { i, j, h, .. } => *i == 1 && *j == 2 && g.is_identity(h),
        }
    }

    /// Rewrites this generator as a word in the literal generators.
    pub fn expand_literal<G: Group<Elem = E>>(&self, g: &G, rank: usize) -> Vec<XGen<E>> {
        if self.is_literal(g) {
            return vec![self.clone()];
        }
        // Conjugating by the basis permutation P gives P ∘ ξ ∘ P⁻¹.
        let conjugate = |sigma: Vec<usize>, inner: Vec<XGen<E>>| {
            let inv = invert_perm(&sigma);
            let mut out = vec![XGen::Perm(sigma)];
            out.extend(inner);
            out.push(XGen::Perm(inv));
            out
        };
        match self {
            XGen::Perm(_) => unreachable!(),
            XGen::Invert(i) => conjugate(transposition(rank, 1, *i), vec![XGen::Invert(1)]),
            XGen::Conj(i, c) => conjugate(transposition(rank, 1, *i), vec![XGen::Conj(1, c.clone())]),
            XGen::MultG(i, c) => conjugate(transposition(rank, 1, *i), vec![XGen::MultG(1, c.clone())]),
            XGen::MultX { i, j, sign, h } => {
                let core = XGen::MultX {
                    i: 1,
                    j: 2,
                    sign: *sign,
                    h: g.identity(),
                };
                // x_1 ↦ x_1 h⁻¹x_2^{±}h is Conj(2,h) ∘ core ∘ Conj(2,h⁻¹).
                let inner = if g.is_identity(h) {
                    vec![core]
                } else {
                    let mut v = XGen::Conj(2, h.clone()).expand_literal(g, rank);
                    v.push(core);
                    v.extend(XGen::Conj(2, g.inv(h)).expand_literal(g, rank));
                    v
                };
                if (*i, *j) == (1, 2) {
                    inner
                } else {
                    let mut sigma = vec![*i, *j];
                    sigma.extend((1..=rank).filter(|k| k != i && k != j));
                    conjugate(sigma, inner)
                }
            }
        }
    }

    /// Replaces `images` (of some automorphism `α`) by the images of `α ∘ self`.
    fn compose_into<G: Group<Elem = E>>(&self, g: &G, images: &mut [FreeProductWord<E>]) {
        match self {
            XGen::Perm(sigma) => {
                let old = images.to_vec();
                for (k, s) in sigma.iter().enumerate() {
                    images[k] = old[s - 1].clone();
                }
            }
            XGen::Invert(i) => images[i - 1] = images[i - 1].invert(g),
            XGen::Conj(i, c) => images[i - 1] = images[i - 1].conj_by(g, c),
            XGen::MultX { i, j, sign, h } => {
                let tail = images[j - 1].pow(g, &BigInt::from(sign.exponent())).conj_by(g, h);
                images[i - 1] = images[i - 1].join(g, &tail);
            }
            XGen::MultG(i, c) => {
                let rank = images[i - 1].rank();
                images[i - 1] = images[i - 1].join(g, &FreeProductWord::constant(g, rank, c.clone()));
            }
        }
    }
}

impl<E: fmt::Display> fmt::Display for XGen<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XGen::Perm(sigma) => {
                let s: Vec<String> = sigma.iter().map(|k| k.to_string()).collect();
                write!(f, "sigma({})", s.join(" "))
            }
            XGen::Invert(i) => write!(f, "inv({i})"),
            XGen::Conj(i, c) => write!(f, "conj({i}){{{c}}}"),
            XGen::MultX { i, j, sign, h } => {
                let s = if *sign == Sign::Plus { '+' } else { '-' };
                write!(f, "multx({i},{j},{s}){{{h}}}")
            }
            XGen::MultG(i, c) => write!(f, "multg({i}){{{c}}}"),
        }
    }
}

/// Formats a generator word, omitting identity conjugators; `id` for the empty word.
pub fn format_genword<G: Group>(g: &G, word: &[XGen<G::Elem>]) -> String {
    if word.is_empty() {
        return "id".into();
    }
    word.iter()
        .map(|x| match x {
            XGen::MultX { i, j, sign, h } if g.is_identity(h) => {
                let s = if *sign == Sign::Plus { '+' } else { '-' };
                format!("multx({i},{j},{s})")
            }
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a whitespace-separated generator word. `id` tokens are ignored.
pub fn parse_genword<G: Group>(g: &G, rank: usize, text: &str) -> Result<Vec<XGen<G::Elem>>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let take_group = |pos: &mut usize, open: u8, close: u8| -> Result<String> {
        if bytes.get(*pos) != Some(&open) {
            return Err(parse_err(format!(
                "expected '{}' at offset {} in {text:?}",
                open as char, *pos
            )));
        }
        let start = *pos + 1;
        let mut depth = 0;
        while *pos < bytes.len() {
            if bytes[*pos] == open {
                depth += 1;
            } else if bytes[*pos] == close {
                depth -= 1;
                if depth == 0 {
                    let s = text[start..*pos].to_string();
                    *pos += 1;
                    return Ok(s);
                }
            }
            *pos += 1;
        }
        Err(parse_err(format!("unclosed '{}' in {text:?}", open as char)))
    };
    let index = |s: &str| -> Result<usize> { s.trim().parse().map_err(|_| parse_err(format!("bad index {s:?}"))) };
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
            pos += 1;
        }
        let name = &text[start..pos];
        if name == "id" {
            continue;
        }
        let args = take_group(&mut pos, b'(', b')')?;
        let elem = |pos: &mut usize, optional: bool| -> Result<G::Elem> {
            if optional && bytes.get(*pos) != Some(&b'{') {
                return Ok(g.identity());
            }
            g.parse_elem(&take_group(pos, b'{', b'}')?)
        };
        let gen = match name {
            "sigma" => XGen::Perm(args.split_whitespace().map(index).collect::<Result<_>>()?),
            "inv" => XGen::Invert(index(&args)?),
            "conj" => XGen::Conj(index(&args)?, elem(&mut pos, false)?),
            "multg" => XGen::MultG(index(&args)?, elem(&mut pos, false)?),
            "multx" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                let [i, j, s] = parts.as_slice() else {
                    return Err(parse_err(format!("multx expects (i,j,+|-), got ({args})")));
                };
                let sign = match *s {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(parse_err(format!("bad sign {s:?} in multx"))),
                };
                XGen::MultX {
                    i: index(i)?,
                    j: index(j)?,
                    sign,
                    h: elem(&mut pos, true)?,
                }
            }
            "" => {
                return Err(parse_err(format!(
                    "expected generator name at offset {start} in {text:?}"
                )))
            }
            other => return Err(parse_err(format!("unknown generator {other:?}"))),
        };
        gen.validate(rank)?;
        out.push(gen);
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(parse_err(format!(
                "expected whitespace after generator at offset {pos} in {text:?}"
            )));
        }
    }
    Ok(out)
}

/// Which copy of `G` an element is embedded through; see
/// [`GAutomorphism::embed_free_product_pair`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

/// An element of `Aut_G(G * F_n)`, or an endomorphism when built from raw images.
#[derive(Clone)]
pub struct GAutomorphism<E> {
    rank: usize,
    images: Vec<FreeProductWord<E>>,
    genword: Option<Vec<XGen<E>>>,
}

/// Equality of all image words.
impl<E: PartialEq> PartialEq for GAutomorphism<E> {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.images == other.images
    }
}

impl<E: Eq> Eq for GAutomorphism<E> {}

impl<E: fmt::Display> fmt::Debug for GAutomorphism<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GAutomorphism {")?;
        for (k, w) in self.images.iter().enumerate() {
            write!(f, " x{} -> {};", k + 1, w)?;
        }
        f.write_str(" }")
    }
}

impl<E: Clone + Eq + fmt::Display> GAutomorphism<E> {
    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank)
            .map(|k| FreeProductWord::var(rank, k).expect("in range"))
            .collect();
        GAutomorphism {
            rank,
            images,
            genword: Some(Vec::new()),
        }
    }

    pub fn from_genword<G: Group<Elem = E>>(g: &G, rank: usize, genword: Vec<XGen<E>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        let mut images: Vec<_> = Self::identity(rank).images;
        for xi in &genword {
            xi.validate(rank)?;
            xi.compose_into(g, &mut images);
        }
        Ok(GAutomorphism {
            rank,
            images,
            genword: Some(genword),
        })
    }

    pub fn from_xgen<G: Group<Elem = E>>(g: &G, rank: usize, xgen: XGen<E>) -> Result<Self> {
        Self::from_genword(g, rank, vec![xgen])
    }

    /// An endomorphism given only by images. It can be applied and can act, but
    /// [`GAutomorphism::inverse`] rejects it.
    pub fn from_images(rank: usize, images: Vec<FreeProductWord<E>>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: images.len(),
            });
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: w.rank(),
            });
        }
        Ok(GAutomorphism {
            rank,
            images,
            genword: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeProductWord<E>] {
        &self.images
    }

    /// Image of `x_k` (1-based).
    pub fn image(&self, k: usize) -> &FreeProductWord<E> {
        &self.images[k - 1]
    }

    pub fn genword(&self) -> Option<&[XGen<E>]> {
        self.genword.as_deref()
    }

    pub fn has_genword(&self) -> bool {
        self.genword.is_some()
    }

    pub fn without_genword(mut self) -> Self {
        self.genword = None;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(
            |(k, w)| matches!(w.letters(), [Letter::Var { index, exp }] if *index == k + 1 && *exp == BigInt::from(1)),
        )
    }

    /// Homomorphic substitution `x_i ↦ α(x_i)`, identity on constants.
    pub fn apply<G: Group<Elem = E>>(&self, g: &G, w: &FreeProductWord<E>) -> Result<FreeProductWord<E>> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(self.substitute(g, w))
    }

    fn substitute<G: Group<Elem = E>>(&self, g: &G, w: &FreeProductWord<E>) -> FreeProductWord<E> {
        let mut out = FreeProductWord::one(self.rank);
        for l in w.letters() {
            let piece = match l {
                Letter::Const(c) => FreeProductWord::constant(g, self.rank, c.clone()),
                Letter::Var { index, exp } => self.images[index - 1].pow(g, exp),
            };
            out = out.join(g, &piece);
        }
        out
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose<G: Group<Elem = E>>(&self, g: &G, other: &Self) -> Result<Self> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let images = other.images.iter().map(|w| self.substitute(g, w)).collect();
        let genword = match (&self.genword, &other.genword) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(GAutomorphism {
            rank: self.rank,
            images,
            genword,
        })
    }

    /// Reverses the generator word and inverts each letter.
    pub fn inverse<G: Group<Elem = E>>(&self, g: &G) -> Result<Self> {
        let word = self.genword.as_ref().ok_or(Error::MissingGenword)?;
        let inv = word.iter().rev().map(|x| x.inverse(g)).collect();
        Self::from_genword(g, self.rank, inv)
    }

    /// The right action `φ · α = φ ∘ α`.
    pub fn act<G: Group<Elem = E>>(&self, g: &G, point: &HomPoint<E>) -> Result<HomPoint<E>> {
        if point.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: point.rank(),
            });
        }
        self.images
            .iter()
            .map(|w| w.evaluate(g, point))
            .collect::<Result<Vec<_>>>()
            .map(HomPoint::new)
    }

    /// Recomputes the images from the generator word and compares.
    pub fn is_coherent<G: Group<Elem = E>>(&self, g: &G) -> bool {
        match &self.genword {
            None => true,
            Some(word) => {
                let mut images = Self::identity(self.rank).images;
                for xi in word {
                    images = (1..=self.rank)
                        .map(|k| {
                            let partial = GAutomorphism {
                                rank: self.rank,
                                images: images.clone(),
                                genword: None,
                            };
                            partial.substitute(g, &xi.image(g, self.rank, k))
                        })
                        .collect();
                }
                images == self.images
            }
        }
    }

    /// The copy of `G` acting by `x_1 ↦ x_1 g`.
    pub fn embed_g<G: Group<Elem = E>>(g: &G, rank: usize, elem: E) -> Result<Self> {
        if rank < 1 {
            return Err(Error::Precondition("embedding needs rank at least 1".into()));
        }
        let word = if g.is_identity(&elem) {
            vec![]
        } else {
            vec![XGen::MultG(1, elem)]
        };
        Self::from_genword(g, rank, word)
    }

    /// The two copies of `G` generating a free product: side `A` is
    /// `x_1 ↦ x_1 g`, side `B` is `x_1 ↦ x_1 (x_2⁻¹ g x_2)`.
    pub fn embed_free_product_pair<G: Group<Elem = E>>(g: &G, rank: usize, elem: E, side: Side) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Precondition(
                "free-product embedding needs rank at least 2".into(),
            ));
        }
        if g.is_identity(&elem) {
            return Ok(Self::identity(rank));
        }
        match side {
            Side::A => Self::embed_g(g, rank, elem),
            Side::B => {
                let e = g.identity();
                let word = vec![
                    XGen::MultX {
                        i: 1,
                        j: 2,
                        sign: Sign::Minus,
                        h: e.clone(),
                    },
                    XGen::MultG(1, elem),
                    XGen::MultX {
                        i: 1,
                        j: 2,
                        sign: Sign::Plus,
                        h: e,
                    },
                ];
                Self::from_genword(g, rank, word)
            }
        }
    }
}
