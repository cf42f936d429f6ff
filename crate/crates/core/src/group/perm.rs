use std::borrow::Cow;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{parse_err, Error, Result};
use crate::group::{FiniteGroup, Group};

pub const DEFAULT_ENUMERATION_CAP: usize = 500_000;

/// Groups larger than this never get an index multiplication table.
const TABLE_CAP: usize = 4096;

/// A permutation of `{0, …, d-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| parse_err(format!("image {i} out of range")))?;
            if *slot {
                return Err(parse_err(format!("image {i} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let p_us = p as usize;
                if p_us >= degree {
                    return Err(parse_err(format!("point {p} out of range for degree {degree}")));
                }
                if used[p_us] {
                    return Err(parse_err(format!("point {p} appears twice")));
                }
                used[p_us] = true;
                images[p_us] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint cycle notation such as `(0 1 2)(3 4)`; `e` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(Self::identity(degree));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| parse_err(format!("expected '(' in permutation {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| parse_err(format!("unclosed cycle in permutation {text:?}")))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| parse_err(format!("bad point {s:?} in permutation {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(points);
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn try_then(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::BackendMismatch(format!(
                "degree {} vs degree {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().map(|c| c.len() as u64).fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Index-level multiplication and inversion for a finite group.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `h^{-1} a h` on indices.
    #[inline]
    pub fn conj(&self, a: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(h), a), h)
    }
}

/// A finite permutation group with a cached canonical enumeration.
///
/// Canonical order: breadth-first over the right Cayley graph of the generators,
/// each layer sorted by the cycle-notation string. Index 0 is the identity.
pub struct PermutationGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: OnceLock<Option<CayleyTable>>,
    simple: OnceLock<bool>,
    center_trivial: OnceLock<bool>,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::BackendMismatch(format!(
                "generator {g} has degree {}, group has degree {degree}",
                g.degree()
            )));
        }
        let identity = Permutation::identity(degree);
        let mut index = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        let mut layer_start = 0;
        while layer_start < elements.len() {
            let layer_end = elements.len();
            let mut next: Vec<(String, Permutation)> = Vec::new();
            for x in &elements[layer_start..layer_end] {
                for g in &generators {
                    let y = x.then(g);
                    if !index.contains_key(&y) && !next.iter().any(|(_, z)| *z == y) {
                        next.push((y.to_string(), y));
                    }
                }
            }
            next.sort();
            for (_, y) in next {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "permutation group enumeration".into(),
                        cap: cap as u64,
                    });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
            layer_start = layer_end;
        }
        Ok(PermutationGroup {
            name: format!(
                "<{}>",
                generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
            ),
            degree,
            generators,
            elements,
            index,
            table: OnceLock::new(),
            simple: OnceLock::new(),
            center_trivial: OnceLock::new(),
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// True iff the normal closure of every non-identity conjugacy class is the
    /// whole group. The trivial group is reported as not simple.
    pub fn check_simplicity(&self) -> bool {
        *self.simple.get_or_init(|| self.compute_simplicity())
    }

    /// True iff only the identity commutes with every generator.
    pub fn center_is_trivial(&self) -> bool {
        *self.center_trivial.get_or_init(|| {
            self.elements
                .iter()
                .skip(1)
                .all(|z| self.generators.iter().any(|g| z.then(g) != g.then(z)))
        })
    }

    /// Lcm of all element orders: the exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.elements.iter().map(Permutation::order).fold(1, num_integer::lcm)
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.elements.len();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if assigned[a] {
                continue;
            }
            let mut class = Vec::new();
            let x = &self.elements[a];
            for h in &self.elements {
                let c = h.inverse().then(x).then(h);
                let ci = self.index[&c];
                if !assigned[ci] {
                    assigned[ci] = true;
                    class.push(ci);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    fn compute_simplicity(&self) -> bool {
        let n = self.elements.len();
        if n == 1 {
            return false;
        }
        for class in self.conjugacy_classes() {
            if class[0] == 0 {
                continue;
            }
            if self.closure_size(&class) < n {
                return false;
            }
        }
        true
    }

    /// Size of the subgroup generated by the given element indices.
    fn closure_size(&self, gens: &[usize]) -> usize {
        let n = self.elements.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul_index(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    if count == n {
                        return n;
                    }
                    queue.push_back(y);
                }
            }
        }
        count
    }

    fn mul_index(&self, a: usize, b: usize) -> usize {
        match self.table.get() {
            Some(Some(t)) => t.mul(a as u32, b as u32) as usize,
            _ => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    fn build_table(&self) -> Option<CayleyTable> {
        let n = self.elements.len();
        if n > TABLE_CAP {
            return None;
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                mul.push(self.index[&a.then(b)] as u32);
            }
        }
        let inv = self.elements.iter().map(|a| self.index[&a.inverse()] as u32).collect();
        Some(CayleyTable { order: n, mul, inv })
    }
}

impl Group for PermutationGroup {
    type Elem = Permutation;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn is_identity(&self, a: &Permutation) -> bool {
        a.is_identity()
    }

    fn parse_elem(&self, text: &str) -> Result<Permutation> {
        let p = Permutation::parse(text, self.degree)?;
        if !self.index.contains_key(&p) {
            return Err(parse_err(format!("{p} is not an element of {}", self.name)));
        }
        Ok(p)
    }

    fn search_elements(&self) -> Result<Cow<'_, [Permutation]>> {
        Ok(Cow::Borrowed(&self.elements))
    }

    fn search_is_exhaustive(&self) -> bool {
        true
    }

    fn is_simple_centerless(&self) -> Result<bool> {
        Ok(self.check_simplicity() && self.center_is_trivial())
    }
}

impl FiniteGroup for PermutationGroup {
    fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    fn index_of(&self, a: &Permutation) -> Option<usize> {
        self.index.get(a).copied()
    }

    fn table(&self) -> Result<&CayleyTable> {
        self.table
            .get_or_init(|| self.build_table())
            .as_ref()
            .ok_or(Error::CapExceeded {
                what: "Cayley table".into(),
                cap: TABLE_CAP as u64,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, d: usize) -> Permutation {
        Permutation::parse(text, d).unwrap()
    }

    /// Composition written out point by point, independent of `then`.
    fn compose_by_hand(a: &Permutation, b: &Permutation) -> Vec<u32> {
        let mut out = Vec::new();
        for p in 0..a.degree() as u32 {
            let after_a = a.images()[p as usize];
            out.push(b.images()[after_a as usize]);
        }
        out
    }

    #[test]
    fn product_is_first_then_second() {
        let a = perm("(0 1 2)", 3);
        let b = perm("(0 1)", 3);
        let ab = a.then(&b);
        assert_eq!(ab.images(), compose_by_hand(&a, &b).as_slice());
        // 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
        assert_eq!(ab, perm("(1 2)", 3));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = perm("(3 4)(0 1 2)", 5);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(perm("e", 5).to_string(), "e");
        assert_eq!(Permutation::parse(&p.to_string(), 5).unwrap(), p);
    }

    #[test]
    fn malformed_permutations_rejected() {
        assert!(Permutation::parse("(0 1", 5).is_err());
        assert!(Permutation::parse("(0 7)", 5).is_err());
        assert!(Permutation::parse("(0 1)(1 2)", 5).is_err());
        assert!(Permutation::parse("0 1", 5).is_err());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.try_then(&b), Err(Error::BackendMismatch(_))));
    }

    #[test]
    fn a5_enumeration() {
        let g = PermutationGroup::new(5, vec![perm("(0 1 2)", 5), perm("(0 1 2 3 4)", 5)]).unwrap();
        assert_eq!(g.order(), 60);
        assert!(g.elements()[0].is_identity());
        let distinct: std::collections::HashSet<_> = g.elements().iter().collect();
        assert_eq!(distinct.len(), 60);
        assert_eq!(g.exponent(), 30);
        assert_eq!(g.conjugacy_classes().len(), 5);
    }

    #[test]
    fn enumeration_cap() {
        let r = PermutationGroup::with_cap(5, vec![perm("(0 1)", 5), perm("(0 1 2 3 4)", 5)], 100);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn parse_elem_checks_membership() {
        let a5 = PermutationGroup::new(5, vec![perm("(0 1 2)", 5), perm("(0 1 2 3 4)", 5)]).unwrap();
        assert!(a5.parse_elem("(0 1)(2 3)").is_ok());
        assert!(a5.parse_elem("(0 1)").is_err());
    }

    #[test]
    fn table_matches_multiplication() {
        let a4 = PermutationGroup::new(4, vec![perm("(0 1 2)", 4), perm("(1 2 3)", 4)]).unwrap();
        let t = a4.table().unwrap();
        for (i, a) in a4.elements().iter().enumerate() {
            assert_eq!(a4.elements()[t.inv(i as u32) as usize], a.inverse());
            for (j, b) in a4.elements().iter().enumerate() {
                assert_eq!(a4.elements()[t.mul(i as u32, j as u32) as usize], a.then(b));
            }
        }
    }
}
