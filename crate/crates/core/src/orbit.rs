//! Brute-force orbit census of the generator action on `G^n` and on ordered
//! pairs of points.
//!
//! Points are indexed in mixed radix over the canonical element enumeration,
//! first coordinate most significant; a pair `(p, q)` is `p·|G|^n + q`. The
//! visited set is a bit array. Each orbit is explored breadth-first from its
//! least unvisited state, so the partition, the sizes and the checksum do not
//! depend on the number of workers.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{format_genword, Sign, XGen};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup, Group, Permutation, PermutationGroup};
use crate::word::{HomPoint, Letter};

pub const DEFAULT_POINT_CAP: u64 = 10_000_000;
pub const DEFAULT_PAIR_CAP: u64 = 20_000_000;
pub const MAX_STATES_ENV: &str = "GFA_MAX_STATES";
pub const REPORT_SCHEMA: u32 = 1;
const MAX_RANK: usize = 64;
const PARALLEL_FRONTIER: usize = 4096;

/// `default`, unless `GFA_MAX_STATES` holds a number.
pub fn state_cap(default: u64) -> u64 {
    std::env::var(MAX_STATES_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

#[derive(Clone, Debug)]
pub struct OrbitConfig {
    pub workers: usize,
    pub point_cap: u64,
    pub pair_cap: u64,
    /// Appended to the standard generators.
    pub extra_generators: Vec<XGen<Permutation>>,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            workers: 1,
            point_cap: state_cap(DEFAULT_POINT_CAP),
            pair_cap: state_cap(DEFAULT_PAIR_CAP),
            extra_generators: Vec::new(),
        }
    }
}

impl OrbitConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OrbitReport {
    pub schema: u32,
    /// `"points"` or `"pairs"`.
    pub space: String,
    pub group: String,
    pub rank: usize,
    pub state_space_size: u64,
    pub orbit_count: usize,
    /// Descending.
    pub orbit_sizes: Vec<u64>,
    pub generators: Vec<String>,
    pub duration_secs: f64,
    pub checksum: String,
}

impl OrbitReport {
    /// Equal up to wall-clock time.
    pub fn same_census(&self, other: &OrbitReport) -> bool {
        OrbitReport {
            duration_secs: 0.0,
            ..self.clone()
        } == OrbitReport {
            duration_secs: 0.0,
            ..other.clone()
        }
    }
}

/// Orbit census together with the orbit number of every state. Orbits are
/// numbered by their least state.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub report: OrbitReport,
    pub labels: Vec<u32>,
}

/// Mixed-radix indexing of `G^n`.
#[derive(Clone, Copy, Debug)]
pub struct PointCodec {
    order: u64,
    rank: usize,
    size: u64,
}

impl PointCodec {
    pub fn new(order: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Precondition(format!(
                "rank must lie in 1..={MAX_RANK}, got {rank}"
            )));
        }
        let order = order as u64;
        let size = (0..rank)
            .try_fold(1u64, |acc, _| acc.checked_mul(order))
            .ok_or_else(|| Error::CapExceeded {
                what: format!("{order}^{rank} points"),
                cap: u64::MAX,
            })?;
        Ok(PointCodec { order, rank, size })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn encode(&self, digits: &[u32]) -> u64 {
        digits.iter().fold(0, |acc, &d| acc * self.order + d as u64)
    }

    pub fn decode_into(&self, mut state: u64, digits: &mut [u32]) {
        for d in digits[..self.rank].iter_mut().rev() {
            *d = (state % self.order) as u32;
            state /= self.order;
        }
    }

    pub fn point<G: FiniteGroup>(&self, g: &G, state: u64) -> HomPoint<G::Elem> {
        let mut digits = vec![0; self.rank];
        self.decode_into(state, &mut digits);
        HomPoint::new(digits.iter().map(|&d| g.elements()[d as usize].clone()).collect())
    }

    pub fn state<G: FiniteGroup>(&self, g: &G, point: &HomPoint<G::Elem>) -> Result<u64> {
        if point.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: point.rank(),
            });
        }
        let digits = point
            .images()
            .iter()
            .map(|e| {
                g.index_of(e)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::Precondition(format!("{e} is not in {}", g.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.encode(&digits))
    }
}

#[derive(Clone, Debug)]
enum Op {
    Const(u32),
    Var(usize, i64),
}

/// A generator's images as index-level programs over the Cayley table.
#[derive(Clone, Debug)]
struct CompiledGen {
    images: Vec<Vec<Op>>,
}

impl CompiledGen {
    fn new(g: &PermutationGroup, rank: usize, xgen: &XGen<Permutation>) -> Result<Self> {
        xgen.validate(rank)?;
        let images = (1..=rank)
            .map(|k| {
                xgen.image(g, rank, k)
                    .letters()
                    .iter()
                    .map(|l| match l {
                        Letter::Const(c) => Ok(Op::Const(g.index_of(c).expect("group element") as u32)),
                        Letter::Var { index, exp } => i64::try_from(exp)
                            .map(|e| Op::Var(index - 1, e))
                            .map_err(|_| Error::Unsupported("exponent too large for the orbit engine".into())),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(CompiledGen { images })
    }

    #[inline]
    fn apply(&self, t: &CayleyTable, src: &[u32], dst: &mut [u32]) {
        for (d, ops) in dst.iter_mut().zip(&self.images) {
            let mut acc = 0u32;
            for op in ops {
                match *op {
                    Op::Const(c) => acc = t.mul(acc, c),
                    Op::Var(i, e) => {
                        let x = if e < 0 { t.inv(src[i]) } else { src[i] };
                        for _ in 0..e.unsigned_abs() {
                            acc = t.mul(acc, x);
                        }
                    }
                }
            }
            *d = acc;
        }
    }
}

/// Transposition `(1 2)` and the cycle `x_k ↦ x_{k+1}`, `x_1 ↦ x_1⁻¹`,
/// `x_1 ↦ x_1 x_2^{±1}`, and conjugation and right multiplication of `x_1` by
/// each generator of `G`.
pub fn standard_generators(g: &PermutationGroup, rank: usize) -> Vec<XGen<Permutation>> {
    let mut out = Vec::new();
    if rank >= 2 {
        let mut swap: Vec<usize> = (1..=rank).collect();
        swap.swap(0, 1);
        out.push(XGen::Perm(swap));
        let cycle: Vec<usize> = (1..=rank).map(|k| k % rank + 1).collect();
        if rank > 2 {
            out.push(XGen::Perm(cycle));
        }
    }
    out.push(XGen::Invert(1));
    if rank >= 2 {
        for sign in [Sign::Plus, Sign::Minus] {
            out.push(XGen::MultX {
                i: 1,
                j: 2,
                sign,
                h: g.identity(),
            });
        }
    }
    let mut gens: Vec<Permutation> = g.generators().iter().filter(|s| !s.is_identity()).cloned().collect();
    gens.dedup();
    for s in gens {
        out.push(XGen::Conj(1, s.clone()));
        out.push(XGen::MultG(1, s));
    }
    out
}

struct Space<'a> {
    table: &'a CayleyTable,
    codec: PointCodec,
    gens: Vec<CompiledGen>,
    names: Vec<String>,
}

impl<'a> Space<'a> {
    fn new(g: &'a PermutationGroup, rank: usize, cfg: &OrbitConfig) -> Result<Self> {
        let codec = PointCodec::new(g.order(), rank)?;
        let table = g.table()?;
        let xgens: Vec<_> = standard_generators(g, rank)
            .into_iter()
            .chain(cfg.extra_generators.iter().cloned())
            .collect();
        let gens = xgens
            .iter()
            .map(|x| CompiledGen::new(g, rank, x))
            .collect::<Result<_>>()?;
        let names = xgens
            .iter()
            .map(|x| format_genword(g, std::slice::from_ref(x)))
            .collect();
        Ok(Space {
            table,
            codec,
            gens,
            names,
        })
    }

    fn step(&self, gen: usize, state: u64) -> u64 {
        let mut src = [0u32; MAX_RANK];
        let mut dst = [0u32; MAX_RANK];
        let n = self.codec.rank;
        self.codec.decode_into(state, &mut src);
        self.gens[gen].apply(self.table, &src[..n], &mut dst[..n]);
        self.codec.encode(&dst[..n])
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Census {
    sizes: Vec<u64>,
    checksum: u64,
    labels: Option<Vec<u32>>,
}

fn explore<F>(states: u64, gens: usize, next: F, workers: usize, want_labels: bool) -> Result<Census>
where
    F: Fn(usize, u64) -> u64 + Send + Sync,
{
    let visited: Vec<AtomicU64> = (0..states.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let claim = |s: u64| {
        let bit = 1u64 << (s % 64);
        visited[(s / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit == 0
    };
    let pool = if workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut labels = want_labels.then(|| vec![u32::MAX; states as usize]);
    let mut sizes = Vec::new();
    let mut checksum = splitmix(states);
    let mut start = 0u64;
    while start < states {
        let word = visited[(start / 64) as usize].load(Ordering::Relaxed);
        if word == u64::MAX {
            start = (start / 64 + 1) * 64;
            continue;
        }
        if word & (1 << (start % 64)) != 0 {
            start += 1;
            continue;
        }
        let orbit = sizes.len() as u32;
        claim(start);
        let mut frontier = vec![start];
        let mut size = 0u64;
        let mut hash = 0u64;
        while !frontier.is_empty() {
            size += frontier.len() as u64;
            for &s in &frontier {
                hash = hash.wrapping_add(splitmix(s));
                if let Some(l) = labels.as_mut() {
                    l[s as usize] = orbit;
                }
            }
            let next = &next;
            let expand = |s: u64| (0..gens).map(move |k| next(k, s));
            frontier = match &pool {
                Some(pool) if frontier.len() >= PARALLEL_FRONTIER => pool.install(|| {
                    frontier
                        .par_iter()
                        .flat_map_iter(|&s| expand(s).filter(|&t| claim(t)))
                        .collect()
                }),
                _ => frontier.iter().flat_map(|&s| expand(s).filter(|&t| claim(t))).collect(),
            };
        }
        for v in [start, size, hash] {
            checksum = splitmix(checksum ^ v);
        }
        sizes.push(size);
        start += 1;
    }
    Ok(Census {
        sizes,
        checksum,
        labels,
    })
}

fn report(
    g: &PermutationGroup,
    rank: usize,
    space: &str,
    states: u64,
    names: Vec<String>,
    census: &Census,
    began: Instant,
) -> OrbitReport {
    let mut orbit_sizes = census.sizes.clone();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    OrbitReport {
        schema: REPORT_SCHEMA,
        space: space.into(),
        group: g.name(),
        rank,
        state_space_size: states,
        orbit_count: orbit_sizes.len(),
        orbit_sizes,
        generators: names,
        duration_secs: began.elapsed().as_secs_f64(),
        checksum: format!("{:016x}", census.checksum),
    }
}

fn check_cap(states: u64, cap: u64, what: &str) -> Result<()> {
    if states > cap {
        return Err(Error::CapExceeded {
            what: format!("{states} {what}"),
            cap,
        });
    }
    Ok(())
}

fn points(g: &PermutationGroup, rank: usize, cfg: &OrbitConfig, labels: bool) -> Result<OrbitPartition> {
    let began = Instant::now();
    let space = Space::new(g, rank, cfg)?;
    let states = space.codec.size();
    check_cap(states, cfg.point_cap, "points")?;
    let census = explore(states, space.gens.len(), |k, s| space.step(k, s), cfg.workers, labels)?;
    let report = report(g, rank, "points", states, space.names.clone(), &census, began);
    Ok(OrbitPartition {
        report,
        labels: census.labels.unwrap_or_default(),
    })
}

fn pairs(g: &PermutationGroup, rank: usize, cfg: &OrbitConfig, labels: bool) -> Result<OrbitPartition> {
    let began = Instant::now();
    let space = Space::new(g, rank, cfg)?;
    let n = space.codec.size();
    let states = n.saturating_mul(n);
    check_cap(states, cfg.pair_cap, "pairs of points")?;
    let gens = space.gens.len();
    let transitions: Vec<u64> = (0..gens as u64 * n)
        .into_par_iter()
        .map(|i| space.step((i / n) as usize, i % n))
        .collect();
    let next = |k: usize, s: u64| {
        let row = &transitions[k * n as usize..];
        row[(s / n) as usize] * n + row[(s % n) as usize]
    };
    let census = explore(states, gens, next, cfg.workers, labels)?;
    let report = report(g, rank, "pairs", states, space.names.clone(), &census, began);
    Ok(OrbitPartition {
        report,
        labels: census.labels.unwrap_or_default(),
    })
}

/// Orbits of the generator action on `Hom_G(G * F_n, G) = G^n`.
pub fn orbits_on_points(g: &PermutationGroup, rank: usize, cfg: &OrbitConfig) -> Result<OrbitReport> {
    Ok(points(g, rank, cfg, false)?.report)
}

/// Orbits of the diagonal action on ordered pairs of points.
pub fn orbits_on_pairs(g: &PermutationGroup, rank: usize, cfg: &OrbitConfig) -> Result<OrbitReport> {
    Ok(pairs(g, rank, cfg, false)?.report)
}

pub fn point_partition(g: &PermutationGroup, rank: usize, cfg: &OrbitConfig) -> Result<OrbitPartition> {
    points(g, rank, cfg, true)
}

pub fn pair_partition(g: &PermutationGroup, rank: usize, cfg: &OrbitConfig) -> Result<OrbitPartition> {
    pairs(g, rank, cfg, true)
}
