//! Thompson's group V as prefix-exchange maps on Cantor space `{0,1}^ℕ`.
//!
//! An element is a bijection between two complete finite prefix codes; the map
//! replaces the prefix `domain[i]` of an infinite binary sequence by `range[i]`.
//! Elements are always stored reduced (no sibling pair of leaves maps onto a
//! sibling pair in order) and sorted by domain leaf, which makes the
//! representation canonical.

use std::borrow::Cow;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{parse_err, Error, Result};
use crate::group::Group;

pub const DEFAULT_BALL_RADIUS: usize = 2;
pub const MAX_BALL_RADIUS: usize = 6;

/// A finite binary string, one `0`/`1` per byte.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Prefix(Vec<u8>);

impl Prefix {
    pub fn root() -> Self {
        Prefix(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.bytes()
            .map(|b| match b {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(parse_err(format!("bad binary prefix {text:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Prefix)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, bits: &[u8]) -> bool {
        bits.starts_with(&self.0)
    }

    pub fn child(&self, bit: u8) -> Prefix {
        let mut v = self.0.clone();
        v.push(bit);
        Prefix(v)
    }

    fn concat(&self, tail: &[u8]) -> Prefix {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Prefix(v)
    }

    fn parent_if_left(&self) -> Option<Prefix> {
        match self.0.last() {
            Some(0) => Some(Prefix(self.0[..self.0.len() - 1].to_vec())),
            _ => None,
        }
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Checks that `code` is a complete finite antichain.
pub(crate) fn check_complete_code(code: &[Prefix]) -> Result<()> {
    let mut sorted: Vec<&Prefix> = code.iter().collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0].is_prefix_of(w[1].bits()) {
            return Err(parse_err(format!(
                "prefix code is not an antichain: {:?} is a prefix of {:?}",
                w[0], w[1]
            )));
        }
    }
    fn complete(code: &[&Prefix], depth: usize) -> bool {
        match code {
            [] => false,
            [only] if only.len() == depth => true,
            _ => {
                if code.iter().any(|p| p.len() <= depth) {
                    return false;
                }
                let split = code.partition_point(|p| p.bits()[depth] == 0);
                complete(&code[..split], depth + 1) && complete(&code[split..], depth + 1)
            }
        }
    }
    if !complete(&sorted, 0) {
        return Err(parse_err(format!(
            "prefix code {{{}}} is incomplete",
            code.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

/// An element of Thompson's group V.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixExchangeMap {
    /// `(domain leaf, range leaf)`, sorted by domain leaf.
    pairs: Vec<(Prefix, Prefix)>,
}

impl PrefixExchangeMap {
    pub fn identity() -> Self {
        PrefixExchangeMap {
            pairs: vec![(Prefix::root(), Prefix::root())],
        }
    }

    /// Validates both codes and returns the reduced map pairing `domain[i]` with `range[i]`.
    pub fn new(domain: Vec<Prefix>, range: Vec<Prefix>) -> Result<Self> {
        if domain.len() != range.len() {
            return Err(parse_err(format!(
                "domain has {} leaves but range has {}",
                domain.len(),
                range.len()
            )));
        }
        check_complete_code(&domain)?;
        check_complete_code(&range)?;
        Ok(Self::reduce(domain.into_iter().zip(range).collect()))
    }

    /// Parses `V{u1,…,uk -> v1,…,vk}`; the identity is `V{ -> }`.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("V{")
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| parse_err(format!("expected V{{... -> ...}}, got {text:?}")))?;
        let (lhs, rhs) = body
            .split_once("->")
            .ok_or_else(|| parse_err(format!("missing '->' in {text:?}")))?;
        let side = |s: &str| -> Result<Vec<Prefix>> { s.split(',').map(|t| Prefix::parse(t.trim())).collect() };
        Self::new(side(lhs)?, side(rhs)?)
    }

    /// Merges sibling pairs until none remain, then sorts by domain.
    pub fn reduce(mut pairs: Vec<(Prefix, Prefix)>) -> Self {
        pairs.sort();
        let mut stack: Vec<(Prefix, Prefix)> = Vec::with_capacity(pairs.len());
        for pair in pairs {
            stack.push(pair);
            while stack.len() >= 2 {
                let (u1, v1) = &stack[stack.len() - 1];
                let (u0, v0) = &stack[stack.len() - 2];
                let merged = match (u0.parent_if_left(), v0.parent_if_left()) {
                    (Some(u), Some(v)) if *u1 == u.child(1) && *v1 == v.child(1) => Some((u, v)),
                    _ => None,
                };
                match merged {
                    Some(m) => {
                        stack.truncate(stack.len() - 2);
                        stack.push(m);
                    }
                    None => break,
                }
            }
        }
        PrefixExchangeMap { pairs: stack }
    }

    pub fn is_reduced(&self) -> bool {
        Self::reduce(self.pairs.clone()) == *self
    }

    pub fn pairs(&self) -> &[(Prefix, Prefix)] {
        &self.pairs
    }

    pub fn domain(&self) -> impl Iterator<Item = &Prefix> {
        self.pairs.iter().map(|(u, _)| u)
    }

    pub fn range(&self) -> impl Iterator<Item = &Prefix> {
        self.pairs.iter().map(|(_, v)| v)
    }

    /// Number of leaves in the reduced diagram.
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|(u, v)| (v.clone(), u.clone())).collect();
        pairs.sort();
        PrefixExchangeMap { pairs }
    }

    /// Applies `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        for (u, v) in &self.pairs {
            // `other`'s domain is a complete antichain: either one leaf is a prefix
            // of `v`, or `v` is a proper prefix of a contiguous run of leaves.
            let at = other.pairs.partition_point(|(d, _)| d <= v);
            if at > 0 && other.pairs[at - 1].0.is_prefix_of(v.bits()) {
                let (d, r) = &other.pairs[at - 1];
                out.push((u.clone(), r.concat(&v.bits()[d.len()..])));
            } else {
                for (d, r) in other.pairs[at..].iter().take_while(|(d, _)| v.is_prefix_of(d.bits())) {
                    out.push((u.concat(&d.bits()[v.len()..]), r.clone()));
                }
            }
        }
        Self::reduce(out)
    }

    /// Image of a finite binary string, or `None` when the string is too short
    /// to determine which leaf it lies under.
    pub fn apply(&self, bits: &[u8]) -> Option<Vec<u8>> {
        let at = self.pairs.partition_point(|(d, _)| d.bits() <= bits);
        if at == 0 {
            return None;
        }
        let (d, r) = &self.pairs[at - 1];
        if !d.is_prefix_of(bits) {
            return None;
        }
        let mut out = r.bits().to_vec();
        out.extend_from_slice(&bits[d.len()..]);
        Some(out)
    }

    /// The standard generators `A, B, C, π₀` of V, in that order.
    pub fn standard_generators() -> [PrefixExchangeMap; 4] {
        [
            "V{00,01,1 -> 0,10,11}",
            "V{0,100,101,11 -> 0,10,110,111}",
            "V{0,10,11 -> 11,0,10}",
            "V{0,10,11 -> 10,0,11}",
        ]
        .map(|s| PrefixExchangeMap::parse(s).expect("standard generator fixture"))
    }
}

impl fmt::Display for PrefixExchangeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: &mut dyn Iterator<Item = &Prefix>| it.map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        let dom = join(&mut self.domain());
        let ran = join(&mut self.range());
        if self.is_identity() {
            f.write_str("V{ -> }")
        } else {
            write!(f, "V{{{dom} -> {ran}}}")
        }
    }
}

impl fmt::Debug for PrefixExchangeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Thompson's group V. Witness searches run over a word ball of fixed radius in
/// the standard generators, so they are never exhaustive.
#[derive(Debug)]
pub struct ThompsonV {
    radius: usize,
    ball: OnceLock<Result<Vec<PrefixExchangeMap>>>,
}

impl Default for ThompsonV {
    fn default() -> Self {
        ThompsonV::new()
    }
}

impl ThompsonV {
    pub fn new() -> Self {
        ThompsonV {
            radius: DEFAULT_BALL_RADIUS,
            ball: OnceLock::new(),
        }
    }

    pub fn with_search_radius(radius: usize) -> Self {
        ThompsonV {
            radius,
            ball: OnceLock::new(),
        }
    }

    pub fn search_radius(&self) -> usize {
        self.radius
    }

    /// `A, A⁻¹, B, B⁻¹, C, C⁻¹, π₀, π₀⁻¹`: the alphabet of [`ThompsonV::ball`].
    pub fn alphabet() -> Vec<PrefixExchangeMap> {
        PrefixExchangeMap::standard_generators()
            .into_iter()
            .flat_map(|g| {
                let gi = g.inverse();
                [g, gi]
            })
            .collect()
    }

    /// All elements of word length at most `radius`, deduplicated, ordered by word
    /// length and then by the lexicographically first word reaching them.
    pub fn ball(radius: usize) -> Result<Vec<PrefixExchangeMap>> {
        if radius > MAX_BALL_RADIUS {
            return Err(Error::CapExceeded {
                what: format!("V ball of radius {radius}"),
                cap: MAX_BALL_RADIUS as u64,
            });
        }
        let alphabet = Self::alphabet();
        let mut seen: HashSet<PrefixExchangeMap> = HashSet::new();
        let mut out = vec![PrefixExchangeMap::identity()];
        seen.insert(PrefixExchangeMap::identity());
        let mut layer_start = 0;
        for _ in 0..radius {
            let layer_end = out.len();
            for i in layer_start..layer_end {
                for letter in &alphabet {
                    let y = out[i].then(letter);
                    if seen.insert(y.clone()) {
                        out.push(y);
                    }
                }
            }
            layer_start = layer_end;
        }
        Ok(out)
    }
}

impl Group for ThompsonV {
    type Elem = PrefixExchangeMap;

    fn name(&self) -> String {
        "V".into()
    }

    fn identity(&self) -> PrefixExchangeMap {
        PrefixExchangeMap::identity()
    }

    fn mul(&self, a: &PrefixExchangeMap, b: &PrefixExchangeMap) -> PrefixExchangeMap {
        a.then(b)
    }

    fn inv(&self, a: &PrefixExchangeMap) -> PrefixExchangeMap {
        a.inverse()
    }

    fn is_identity(&self, a: &PrefixExchangeMap) -> bool {
        a.is_identity()
    }

    fn parse_elem(&self, text: &str) -> Result<PrefixExchangeMap> {
        PrefixExchangeMap::parse(text)
    }

    fn search_elements(&self) -> Result<Cow<'_, [PrefixExchangeMap]>> {
        match self.ball.get_or_init(|| Self::ball(self.radius)) {
            Ok(v) => Ok(Cow::Borrowed(v)),
            Err(e) => Err(e.clone()),
        }
    }

    fn search_is_exhaustive(&self) -> bool {
        false
    }

    fn is_simple_centerless(&self) -> Result<bool> {
        // V is simple with trivial center; taken as known.
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> PrefixExchangeMap {
        PrefixExchangeMap::parse(s).unwrap()
    }

    fn bits(s: &str) -> Vec<u8> {
        Prefix::parse(s).unwrap().bits().to_vec()
    }

    #[test]
    fn parse_and_print() {
        let m = v("V{00,01,1 -> 1,00,01}");
        assert_eq!(m.to_string(), "V{00,01,1 -> 1,00,01}");
        assert_eq!(v("V{1,00,01 -> 01,1,00}"), m);
        assert_eq!(v("V{ -> }"), PrefixExchangeMap::identity());
        assert_eq!(PrefixExchangeMap::identity().to_string(), "V{ -> }");
    }

    #[test]
    fn parser_rejects_bad_codes() {
        let err = PrefixExchangeMap::parse("V{0,01,1 -> 0,10,11}").unwrap_err();
        assert!(err.to_string().contains("antichain"), "{err}");
        let err = PrefixExchangeMap::parse("V{00,1 -> 0,1}").unwrap_err();
        assert!(err.to_string().contains("incomplete"), "{err}");
        assert!(PrefixExchangeMap::parse("V{0,1 -> 0}").is_err());
        assert!(PrefixExchangeMap::parse("V{0,2 -> 0,1}").is_err());
        assert!(PrefixExchangeMap::parse("{0,1 -> 0,1}").is_err());
    }

    #[test]
    fn unreduced_input_is_reduced() {
        // Splitting every leaf of the identity gives the identity back.
        assert!(v("V{00,01,10,11 -> 00,01,10,11}").is_identity());
        let a = v("V{00,01,1 -> 0,10,11}");
        let expanded = v("V{00,010,011,1 -> 0,100,101,11}");
        assert_eq!(a, expanded);
    }

    #[test]
    fn apply_replaces_prefix() {
        let a = v("V{00,01,1 -> 0,10,11}");
        assert_eq!(a.apply(&bits("0011")), Some(bits("011")));
        assert_eq!(a.apply(&bits("1")), Some(bits("11")));
        assert_eq!(a.apply(&bits("0")), None);
    }

    #[test]
    fn generator_orders() {
        let [a, b, c, pi] = PrefixExchangeMap::standard_generators();
        assert!(!a.is_identity() && !b.is_identity());
        assert!(c.then(&c).then(&c).is_identity());
        assert!(!c.then(&c).is_identity());
        assert!(pi.then(&pi).is_identity());
        for g in [a, b, c, pi] {
            assert!(g.then(&g.inverse()).is_identity());
        }
    }

    #[test]
    fn ball_radius_zero_and_one() {
        assert_eq!(ThompsonV::ball(0).unwrap(), vec![PrefixExchangeMap::identity()]);
        // π₀ is an involution, so the 8 letters give 7 distinct non-identity values.
        let mut distinct: Vec<_> = ThompsonV::alphabet().into_iter().filter(|g| !g.is_identity()).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 7);
        assert_eq!(ThompsonV::ball(1).unwrap().len(), 1 + distinct.len());
    }

    #[test]
    fn ball_sizes_monotone() {
        let sizes: Vec<usize> = (0..=3).map(|r| ThompsonV::ball(r).unwrap().len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
        assert!(matches!(
            ThompsonV::ball(MAX_BALL_RADIUS + 1),
            Err(Error::CapExceeded { .. })
        ));
    }
}
