use crate::error::{parse_err, Result};
use crate::group::{Permutation, PermutationGroup, ThompsonV};

/// A concrete backend selected at run time.
#[derive(Debug)]
pub enum Backend {
    Perm(PermutationGroup),
    V(ThompsonV),
}

fn cycle(points: impl IntoIterator<Item = u32>, degree: usize) -> Permutation {
    let pts: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&pts]).expect("catalog cycle")
}

/// Parses a group name.
///
/// Accepted: `A<n>` (alternating), `S<n>` (symmetric), `C<n>` (cyclic),
/// `D<n>` (dihedral of order 2n), `trivial`, `V` (Thompson's group V), and
/// `perm<d>{g1; g2; …}` for the group generated by explicit permutations of
/// degree `d`.
pub fn parse_group_spec(spec: &str) -> Result<Backend> {
    let spec = spec.trim();
    if spec == "V" {
        return Ok(Backend::V(ThompsonV::new()));
    }
    if spec == "trivial" {
        return Ok(Backend::Perm(PermutationGroup::new(1, vec![])?.named("trivial")));
    }
    if let Some(rest) = spec.strip_prefix("perm") {
        let open = rest.find('{').ok_or_else(|| parse_err("expected perm<d>{...}"))?;
        let degree: usize = rest[..open]
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad degree in {spec:?}")))?;
        let body = rest[open + 1..]
            .strip_suffix('}')
            .ok_or_else(|| parse_err(format!("unclosed brace in {spec:?}")))?;
        let gens = body
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Backend::Perm(PermutationGroup::new(degree, gens)?.named(spec)));
    }
    let (kind, n) = spec.split_at(1);
    let n: usize = n.parse().map_err(|_| parse_err(format!("unknown group {spec:?}")))?;
    let n32 = n as u32;
    let gens = match kind {
        "S" if n >= 1 => {
            if n == 1 {
                vec![]
            } else {
                vec![cycle([0, 1], n), cycle(0..n32, n)]
            }
        }
        "A" if n >= 3 => {
            let long = if n % 2 == 1 { cycle(0..n32, n) } else { cycle(1..n32, n) };
            vec![cycle([0, 1, 2], n), long]
        }
        "A" if n >= 1 => vec![],
        "C" if n >= 1 => {
            if n == 1 {
                vec![]
            } else {
                vec![cycle(0..n32, n)]
            }
        }
        "D" if n >= 3 => {
            let reflection: Vec<u32> = (0..n32).map(|i| (n32 - i) % n32).collect();
            vec![cycle(0..n32, n), Permutation::from_images(reflection)?]
        }
        _ => return Err(parse_err(format!("unknown group {spec:?}"))),
    };
    Ok(Backend::Perm(PermutationGroup::new(n.max(1), gens)?.named(spec)))
}
