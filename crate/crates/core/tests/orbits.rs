mod common;

use common::{perm_group, rng};
use gfa_core::group::{FiniteGroup, Permutation, PermutationGroup};
use gfa_core::orbit::{
    orbits_on_points, pair_partition, point_partition, standard_generators, OrbitConfig, PointCodec,
};
use gfa_core::{k_transitivity_witness, sample, GAutomorphism, Sign, XGen};
use rand::seq::SliceRandom;
use rand::Rng;

/// Union-find over points, joined along every generator of the full set X
/// with parameters ranging over all of G.
fn full_generator_orbits(g: &PermutationGroup, rank: usize) -> usize {
    let codec = PointCodec::new(g.order(), rank).unwrap();
    let mut gens: Vec<XGen<Permutation>> = vec![XGen::Invert(1)];
    for a in g.elements() {
        gens.push(XGen::Conj(1, a.clone()));
        gens.push(XGen::MultG(1, a.clone()));
        if rank >= 2 {
            gens.push(XGen::MultX {
                i: 1,
                j: 2,
                sign: Sign::Plus,
                h: a.clone(),
            });
        }
    }
    if rank >= 2 {
        gens.push(XGen::Perm((1..=rank).map(|k| if k <= 2 { 3 - k } else { k }).collect()));
    }
    let autos: Vec<_> = gens
        .into_iter()
        .map(|x| GAutomorphism::from_xgen(g, rank, x).unwrap())
        .collect();
    let mut parent: Vec<usize> = (0..codec.size() as usize).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in 0..codec.size() {
        let point = codec.point(g, s);
        for a in &autos {
            let t = codec.state(g, &a.act(g, &point).unwrap()).unwrap() as usize;
            let (x, y) = (find(&mut parent, s as usize), find(&mut parent, t));
            parent[x.max(y)] = x.min(y);
        }
    }
    (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[test]
fn orbit_counts_match_union_find_oracle() {
    for (name, rank) in [("A5", 1), ("A5", 2), ("A4", 2), ("S4", 1), ("C4", 2), ("S3", 2)] {
        let g = perm_group(name);
        let r = orbits_on_points(&g, rank, &OrbitConfig::default()).unwrap();
        assert_eq!(r.orbit_count, full_generator_orbits(&g, rank), "{name} rank {rank}");
        assert_eq!(r.orbit_sizes.iter().sum::<u64>(), r.state_space_size);
    }
}

#[test]
fn partition_is_invariant_under_random_generators() {
    let g = perm_group("A5");
    let part = point_partition(&g, 2, &OrbitConfig::default()).unwrap();
    let codec = PointCodec::new(60, 2).unwrap();
    let mut r = rng(50);
    let gens: Vec<_> = (0..64)
        .map(|_| GAutomorphism::from_xgen(&g, 2, sample::xgen(&g, 2, &mut r)).unwrap())
        .chain(
            standard_generators(&g, 2)
                .into_iter()
                .map(|x| GAutomorphism::from_xgen(&g, 2, x).unwrap()),
        )
        .collect();
    for _ in 0..100_000 {
        let s = r.gen_range(0..codec.size());
        let a = gens.choose(&mut r).unwrap();
        let t = codec.state(&g, &a.act(&g, &codec.point(&g, s)).unwrap()).unwrap();
        assert_eq!(part.labels[s as usize], part.labels[t as usize]);
    }
}

#[test]
fn pair_partition_separates_the_diagonal() {
    let g = perm_group("A4");
    let part = pair_partition(&g, 1, &OrbitConfig::default()).unwrap();
    let n = 12u64;
    let diagonal: std::collections::HashSet<u32> = (0..n).map(|p| part.labels[(p * n + p) as usize]).collect();
    for p in 0..n {
        for q in 0..n {
            assert_eq!(diagonal.contains(&part.labels[(p * n + q) as usize]), p == q);
        }
    }
}

#[test]
fn extra_generators_do_not_change_orbits() {
    let mut r = rng(51);
    for name in ["A5", "A4", "S3"] {
        let g = perm_group(name);
        let base = orbits_on_points(&g, 2, &OrbitConfig::default()).unwrap();
        let extra = (0..10).map(|_| sample::xgen(&g, 2, &mut r)).collect();
        let more = orbits_on_points(
            &g,
            2,
            &OrbitConfig {
                extra_generators: extra,
                ..OrbitConfig::default()
            },
        )
        .unwrap();
        assert_eq!(base.orbit_sizes, more.orbit_sizes, "{name}");
    }
}

#[test]
fn census_is_reproducible() {
    let g = perm_group("A5");
    let a = orbits_on_points(&g, 3, &OrbitConfig::default()).unwrap();
    let b = orbits_on_points(&g, 3, &OrbitConfig::default().with_workers(3)).unwrap();
    assert!(a.same_census(&b));
    assert_eq!(a.orbit_sizes, vec![216_000]);
}

#[test]
fn off_diagonal_pairs_have_witnesses() {
    let g = perm_group("A5");
    let mut r = rng(52);
    let distinct_pair = |r: &mut rand::rngs::StdRng| loop {
        let (p, q) = (sample::point(&g, 2, r), sample::point(&g, 2, r));
        if p != q {
            return [p, q];
        }
    };
    for _ in 0..100 {
        let src = distinct_pair(&mut r);
        let dst = distinct_pair(&mut r);
        let w = k_transitivity_witness(&g, &src, &dst).unwrap();
        assert_eq!(w.act(&g, &src[0]).unwrap(), dst[0]);
        assert_eq!(w.act(&g, &src[1]).unwrap(), dst[1]);
    }
}
