//! Words in the free product `G * F_n` and their reduced normal form.
//!
//! A word is stored as a flat list of letters: constants `c{g}` from `G` and
//! powers `x_i^k` of the free generators (1-based indices). In normal form no
//! letter is trivial, no two constants are adjacent, and no two powers of the
//! same generator are adjacent. Maximal runs of variable letters are the
//! `F_n`-syllables; two words are equal in `G * F_n` iff their letter lists are
//! identical.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};
use crate::group::Group;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Letter<E> {
    Const(E),
    Var { index: usize, exp: BigInt },
}

impl<E> Letter<E> {
    pub fn var(index: usize, exp: impl Into<BigInt>) -> Self {
        Letter::Var { index, exp: exp.into() }
    }
}

/// A maximal run of letters from one free factor.
#[derive(Debug, PartialEq, Eq)]
pub enum Syllable<'a, E> {
    Const(&'a E),
    Free(&'a [Letter<E>]),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeProductWord<E> {
    rank: usize,
    letters: Vec<Letter<E>>,
}

fn push_letter<G: Group>(g: &G, letters: &mut Vec<Letter<G::Elem>>, letter: Letter<G::Elem>) {
    match (letters.last_mut(), letter) {
        (Some(Letter::Const(a)), Letter::Const(b)) => {
            let c = g.mul(a, &b);
            if g.is_identity(&c) {
                letters.pop();
            } else {
                *a = c;
            }
        }
        (Some(Letter::Var { index: i, exp: e }), Letter::Var { index: j, exp: f }) if *i == j => {
            *e += f;
            if e.is_zero() {
                letters.pop();
            }
        }
        (_, Letter::Const(b)) if g.is_identity(&b) => {}
        (_, Letter::Var { exp, .. }) if exp.is_zero() => {}
        (_, l) => letters.push(l),
    }
}

impl<E: Clone + Eq> FreeProductWord<E> {
    /// The empty word.
    pub fn one(rank: usize) -> Self {
        FreeProductWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter<E>] {
        &self.letters
    }

    pub fn is_one(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters in normal form.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn var(rank: usize, index: usize) -> Result<Self> {
        Self::var_pow(rank, index, 1)
    }

    pub fn var_pow(rank: usize, index: usize, exp: impl Into<BigInt>) -> Result<Self> {
        check_index(rank, index)?;
        let exp = exp.into();
        let letters = if exp.is_zero() {
            vec![]
        } else {
            vec![Letter::Var { index, exp }]
        };
        Ok(FreeProductWord { rank, letters })
    }

    /// Whether any letter is a power of `x_index`.
    pub fn involves(&self, index: usize) -> bool {
        self.letters
            .iter()
            .any(|l| matches!(l, Letter::Var { index: i, .. } if *i == index))
    }

    pub fn syllables(&self) -> Vec<Syllable<'_, E>> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            match &self.letters[i] {
                Letter::Const(g) => {
                    out.push(Syllable::Const(g));
                    i += 1;
                }
                Letter::Var { .. } => {
                    let start = i;
                    while i < self.letters.len() && matches!(self.letters[i], Letter::Var { .. }) {
                        i += 1;
                    }
                    out.push(Syllable::Free(&self.letters[start..i]));
                }
            }
        }
        out
    }
}

fn check_index(rank: usize, index: usize) -> Result<()> {
    if index == 0 || index > rank {
        Err(Error::IndexOutOfRange { index, rank })
    } else {
        Ok(())
    }
}

impl<E: Clone + Eq + fmt::Display> FreeProductWord<E> {
    pub fn constant<G: Group<Elem = E>>(g: &G, rank: usize, elem: E) -> Self {
        let mut letters = Vec::new();
        push_letter(g, &mut letters, Letter::Const(elem));
        FreeProductWord { rank, letters }
    }

    /// Reduces an arbitrary letter list to normal form.
    pub fn reduce<G: Group<Elem = E>>(g: &G, rank: usize, raw: impl IntoIterator<Item = Letter<E>>) -> Result<Self> {
        let mut letters = Vec::new();
        for l in raw {
            if let Letter::Var { index, .. } = &l {
                check_index(rank, *index)?;
            }
            push_letter(g, &mut letters, l);
        }
        Ok(FreeProductWord { rank, letters })
    }

    /// Whether the stored letters satisfy the normal-form invariants.
    pub fn is_normal_form<G: Group<Elem = E>>(&self, g: &G) -> bool {
        let letters_ok = self.letters.iter().all(|l| match l {
            Letter::Const(c) => !g.is_identity(c),
            Letter::Var { index, exp } => !exp.is_zero() && *index >= 1 && *index <= self.rank,
        });
        let adjacent_ok = self.letters.windows(2).all(|w| match (&w[0], &w[1]) {
            (Letter::Const(_), Letter::Const(_)) => false,
            (Letter::Var { index: i, .. }, Letter::Var { index: j, .. }) => i != j,
            _ => true,
        });
        letters_ok && adjacent_ok
    }

    pub fn concat<G: Group<Elem = E>>(&self, g: &G, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(self.join(g, other))
    }

    /// Product of words of equal rank.
    pub(crate) fn join<G: Group<Elem = E>>(&self, g: &G, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut letters = self.letters.clone();
        for l in &other.letters {
            push_letter(g, &mut letters, l.clone());
        }
        FreeProductWord {
            rank: self.rank,
            letters,
        }
    }

    pub fn invert<G: Group<Elem = E>>(&self, g: &G) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match l {
                Letter::Const(c) => Letter::Const(g.inv(c)),
                Letter::Var { index, exp } => Letter::Var {
                    index: *index,
                    exp: -exp,
                },
            })
            .collect();
        FreeProductWord {
            rank: self.rank,
            letters,
        }
    }

    pub fn pow<G: Group<Elem = E>>(&self, g: &G, exp: &BigInt) -> Self {
        let base = if exp.is_negative() {
            self.invert(g)
        } else {
            self.clone()
        };
        if let [Letter::Var { index, exp: e }] = base.letters.as_slice() {
            return FreeProductWord {
                rank: self.rank,
                letters: vec![Letter::Var {
                    index: *index,
                    exp: e * exp.abs(),
                }],
            };
        }
        let mut e = exp.abs();
        let mut acc = Self::one(self.rank);
        let mut sq = base;
        while !e.is_zero() {
            if e.bit(0) {
                acc = acc.join(g, &sq);
            }
            e >>= 1u32;
            if !e.is_zero() {
                sq = sq.join(g, &sq);
            }
        }
        acc
    }

    /// `h^{-1} w h` for a constant `h`.
    pub fn conj_by<G: Group<Elem = E>>(&self, g: &G, h: &E) -> Self {
        let left = Self::constant(g, self.rank, g.inv(h));
        let right = Self::constant(g, self.rank, h.clone());
        left.join(g, self).join(g, &right)
    }

    /// Substitutes `x_i ↦ images[i]` and multiplies left to right in `G`.
    pub fn evaluate<G: Group<Elem = E>>(&self, g: &G, point: &HomPoint<E>) -> Result<E> {
        if point.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: point.rank(),
            });
        }
        Ok(self.eval_with(g, |i| point.images[i - 1].clone()))
    }

    fn eval_with<G: Group<Elem = E>>(&self, g: &G, var: impl Fn(usize) -> E) -> E {
        let mut acc = g.identity();
        for l in &self.letters {
            let factor = match l {
                Letter::Const(c) => c.clone(),
                Letter::Var { index, exp } => g.pow(&var(*index), exp),
            };
            acc = g.mul(&acc, &factor);
        }
        acc
    }

    /// The `G`-coordinate of the splitting `G * F_n = ⟪F_n⟫ ⋊ G`: evaluation at the
    /// point sending every `x_i` to the identity. A homomorphism.
    pub fn projection<G: Group<Elem = E>>(&self, g: &G) -> E {
        let mut acc = g.identity();
        for l in &self.letters {
            if let Letter::Const(c) = l {
                acc = g.mul(&acc, c);
            }
        }
        acc
    }

    /// The `⟪F_n⟫`-coordinate: `w · projection(w)^{-1}`. Not a homomorphism, but
    /// invariant under right multiplication by constants, equivariant under
    /// conjugation by constants, and `normal_part(w⁻¹) = p⁻¹ normal_part(w)⁻¹ p`
    /// with `p = projection(w)`.
    pub fn normal_part<G: Group<Elem = E>>(&self, g: &G) -> Self {
        let p = self.projection(g);
        self.join(g, &Self::constant(g, self.rank, g.inv(&p)))
    }

    /// Image in `F_n` after killing every constant.
    pub fn forget_constants<G: Group<Elem = E>>(&self, g: &G) -> Self {
        let letters = self.letters.iter().filter(|l| matches!(l, Letter::Var { .. })).cloned();
        Self::reduce(g, self.rank, letters).expect("indices already validated")
    }

    /// Replaces the rank, keeping letters. Fails if a letter's index no longer fits.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        for l in &self.letters {
            if let Letter::Var { index, .. } = l {
                check_index(rank, *index)?;
            }
        }
        Ok(FreeProductWord {
            rank,
            letters: self.letters.clone(),
        })
    }

    /// Largest generator index used, or 0.
    pub fn max_index(&self) -> usize {
        self.letters
            .iter()
            .filter_map(|l| match l {
                Letter::Var { index, .. } => Some(*index),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Parses `1` or `term (* term)*` with terms `x<i>`, `x<i>^<k>`, `c{<elem>}`.
    pub fn parse<G: Group<Elem = E>>(g: &G, rank: usize, text: &str) -> Result<Self> {
        let raw = parse_letters(g, text)?;
        Self::reduce(g, rank, raw)
    }

    /// Like [`FreeProductWord::parse`] with the rank set to the largest index used
    /// (at least 1).
    pub fn parse_min_rank<G: Group<Elem = E>>(g: &G, text: &str) -> Result<Self> {
        let raw = parse_letters(g, text)?;
        let rank = raw
            .iter()
            .filter_map(|l| match l {
                Letter::Var { index, .. } => Some(*index),
                _ => None,
            })
            .max()
            .unwrap_or(1)
            .max(1);
        Self::reduce(g, rank, raw)
    }
}

/// Splits on `sep` outside of any bracket.
pub(crate) fn split_top_level(text: &str, sep: char) -> Result<Vec<&str>> {
    let mut depth: i32 = 0;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err(format!("unbalanced brackets in {text:?}")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced brackets in {text:?}")));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

fn parse_letters<G: Group>(g: &G, text: &str) -> Result<Vec<Letter<G::Elem>>> {
    let text = text.trim();
    if text == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in split_top_level(text, '*')? {
        let term = term.trim();
        if let Some(rest) = term.strip_prefix("c{") {
            let body = rest
                .strip_suffix('}')
                .ok_or_else(|| parse_err(format!("unclosed constant in {term:?}")))?;
            out.push(Letter::Const(g.parse_elem(body)?));
        } else if let Some(rest) = term.strip_prefix('x') {
            let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
            let (idx, exp) = match compact.split_once('^') {
                Some((i, e)) => (i.to_string(), e.to_string()),
                None => (compact.clone(), "1".to_string()),
            };
            let index: usize = idx
                .parse()
                .map_err(|_| parse_err(format!("bad generator index in {term:?}")))?;
            if index == 0 {
                return Err(parse_err(format!("generator indices start at 1: {term:?}")));
            }
            let exp: BigInt = exp
                .parse()
                .map_err(|_| parse_err(format!("bad exponent in {term:?}")))?;
            out.push(Letter::Var { index, exp });
        } else {
            return Err(parse_err(format!("unrecognized term {term:?}")));
        }
    }
    Ok(out)
}

impl<E: fmt::Display> fmt::Display for FreeProductWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            match l {
                Letter::Const(c) => write!(f, "c{{{c}}}")?,
                Letter::Var { index, exp } if exp.is_one() => write!(f, "x{index}")?,
                Letter::Var { index, exp } => write!(f, "x{index}^{exp}")?,
            }
        }
        Ok(())
    }
}

impl<E: fmt::Display> fmt::Debug for FreeProductWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[rank {}] {}", self.rank, self)
    }
}

/// A `G`-homomorphism `G * F_n → G`, given by the images of `x_1, …, x_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPoint<E> {
    images: Vec<E>,
}

impl<E: Clone> HomPoint<E> {
    pub fn new(images: Vec<E>) -> Self {
        HomPoint { images }
    }

    /// The point sending every generator to the identity.
    pub fn trivial<G: Group<Elem = E>>(g: &G, rank: usize) -> Self {
        HomPoint {
            images: vec![g.identity(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[E] {
        &self.images
    }

    /// Image of `x_index` (1-based).
    pub fn image(&self, index: usize) -> &E {
        &self.images[index - 1]
    }

    pub fn into_images(self) -> Vec<E> {
        self.images
    }

    /// Parses `[g1; g2; …]`.
    pub fn parse<G: Group<Elem = E>>(g: &G, text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| parse_err(format!("expected [g1; ...; gn], got {text:?}")))?;
        let images = split_top_level(body, ';')?
            .into_iter()
            .map(|s| g.parse_elem(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomPoint { images })
    }

    /// Parses a whitespace- or comma-separated sequence of `[...]` points.
    pub fn parse_list<G: Group<Elem = E>>(g: &G, text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match ch {
                '[' => {
                    if depth == 0 {
                        start = Some(i);
                    }
                    depth += 1;
                }
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let s = start.take().ok_or_else(|| parse_err("unbalanced ']'"))?;
                        out.push(Self::parse(g, &text[s..=i])?);
                    } else if depth < 0 {
                        return Err(parse_err("unbalanced ']'"));
                    }
                }
                c if depth == 0 && !(c.is_whitespace() || c == ',') => {
                    return Err(parse_err(format!("unexpected {c:?} between points")));
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(parse_err("unclosed '['"));
        }
        Ok(out)
    }
}

impl<E: fmt::Display> fmt::Display for HomPoint<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl<E: fmt::Display> fmt::Debug for HomPoint<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
