//! Cross-module property tests: structural invariants fuzzed over random
//! instances, plus the independent brute-force completeness checks.

use gallai_core::canonical::{canonical_key, CanonicalKey};
use gallai_core::catalog::{circulant, verify_witness, BLUE, RED};
use gallai_core::certificate::verify_certificate;
use gallai_core::clique::{find_rainbow_triangle, mono_clique_number};
use gallai_core::coloring::{ColoringBuilder, EdgeColoring};
use gallai_core::partition::{find_min_q_partition, find_partition};
use gallai_core::substitution::{blowup_clique_number, map_colors, substitute};
use gallai_core::weights::{enumerate_configs, valid_labelings, PartLabel, StructureConfig};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn random_product(rng: &mut ChaCha8Rng, n: usize, k: usize) -> EdgeColoring {
    if n == 1 {
        return EdgeColoring::single_vertex(k);
    }
    let q = rng.gen_range(2..=n.min(5));
    let mut sizes = vec![1usize; q];
    for _ in 0..(n - q) {
        sizes[rng.gen_range(0..q)] += 1;
    }
    let a = rng.gen_range(0..k);
    let mut b = rng.gen_range(0..k);
    while b == a {
        b = rng.gen_range(0..k);
    }
    let mut template = ColoringBuilder::new(q, 2, 0).unwrap();
    for u in 0..q {
        for v in (u + 1)..q {
            template.set_color(u, v, rng.gen_range(0..2)).unwrap();
        }
    }
    let parts: Vec<EdgeColoring> = sizes.iter().map(|&m| random_product(rng, m, k)).collect();
    substitute(&template.build(), &parts, [a, b]).unwrap().0
}

/// Substitution products of Gallai parts are rainbow-free, their block
/// certificates verify, and `find_partition` always returns a valid
/// certificate (10^4 instances).
#[test]
fn partition_extraction_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..10_000 {
        let n = rng.gen_range(2..=24);
        let k = rng.gen_range(2..=5);
        let g = random_product(&mut rng, n, k);
        assert_eq!(find_rainbow_triangle(&g), None, "instance {i}");
        let cert = find_partition(&g).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert!(verify_certificate(&g, &cert), "instance {i}");
    }
}

/// The exhaustive minimum never exceeds the module-contraction partition.
#[test]
fn min_q_below_extracted_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..300 {
        let n = rng.gen_range(2..=9);
        let k = rng.gen_range(2..=4);
        let g = random_product(&mut rng, n, k);
        let extracted = find_partition(&g).unwrap();
        let minimal = find_min_q_partition(&g, 12).unwrap();
        assert!(minimal.q() <= extracted.q());
    }
}

/// Canonical keys are invariant under 1000 random vertex relabelings of each
/// test graph.
#[test]
fn canonical_key_permutation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let graphs = vec![
        circulant(5, &[1, 4]).unwrap(),
        circulant(8, &[1, 4, 7]).unwrap(),
        EdgeColoring::new_complete(6, 3, 1).unwrap(),
        random_product(&mut rng, 7, 3),
    ];
    for g in graphs {
        let n = g.n();
        let key = canonical_key(&g, false).unwrap();
        let key_cp = canonical_key(&g, true).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..1000 {
            perm.shuffle(&mut rng);
            let mut b = ColoringBuilder::new(n, g.k(), 0).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    b.set_color(perm[u], perm[v], g.color(u, v)).unwrap();
                }
            }
            let h = b.build();
            assert_eq!(canonical_key(&h, false).unwrap(), key);
            assert_eq!(canonical_key(&h, true).unwrap(), key_cp);
        }
    }
}

/// Monochromatic clique numbers of a blow-up equal the template maxima
/// weighted by the parts' clique numbers (instances up to 200 vertices).
#[test]
fn blowup_clique_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..40 {
        let k = rng.gen_range(2..=4);
        let q = rng.gen_range(2..=6);
        let mut template = ColoringBuilder::new(q, 2, 0).unwrap();
        for u in 0..q {
            for v in (u + 1)..q {
                template.set_color(u, v, rng.gen_range(0..2)).unwrap();
            }
        }
        let template = template.build();
        let a = rng.gen_range(0..k);
        let mut b = rng.gen_range(0..k);
        while b == a {
            b = rng.gen_range(0..k);
        }
        let parts: Vec<EdgeColoring> = (0..q)
            .map(|_| {
                let m = rng.gen_range(1..=200 / q);
                random_product(&mut rng, m, k)
            })
            .collect();
        let (g, cert) = substitute(&template, &parts, [a, b]).unwrap();
        assert!(verify_certificate(&g, &cert));
        let part_cliques: Vec<Vec<usize>> = parts
            .iter()
            .map(|p| (0..k).map(|c| mono_clique_number(p, c).unwrap()).collect())
            .collect();
        for c in 0..k {
            assert_eq!(
                blowup_clique_number(&template, &part_cliques, [a, b], c),
                mono_clique_number(&g, c).unwrap(),
                "color {c}"
            );
        }
    }
}

/// Restricting the 169-vertex example to a constructed block recovers the
/// order-13 witness recolored into the red/green palette, exactly.
#[test]
fn k169_block_is_recolored_witness() {
    let (g, chain) = gallai_core::substitution::build_k169();
    let expected = map_colors(&circulant(13, &[1, 5, 8, 12]).unwrap(), &[0, 2], 3).unwrap();
    for block in &chain.levels[0].parts {
        assert_eq!(g.restrict(block).unwrap(), expected);
    }
}

/// Independent brute force for the (3,4) configuration family: enumerate all
/// 2-colorings of K_q edge by edge with dual clique pruning, then all
/// labelings, and compare canonical sets with the level-wise enumerator.
#[test]
fn config_completeness_34_brute_force() {
    let mut brute: HashSet<CanonicalKey> = HashSet::new();
    for q in 1..=8usize {
        let pairs: Vec<(usize, usize)> = (0..q)
            .flat_map(|u| ((u + 1)..q).map(move |v| (u, v)))
            .collect();
        let mut colors = vec![0usize; pairs.len()];
        // depth-first over edges; prune red triangles and blue K4s as soon
        // as their last edge is colored
        fn closes_clique(
            pairs: &[(usize, usize)],
            colors: &[usize],
            depth: usize,
            color: usize,
            size: usize,
            q: usize,
        ) -> bool {
            let (u, v) = pairs[depth];
            let mut common: Vec<usize> = Vec::new();
            for w in 0..q {
                if w == u || w == v {
                    continue;
                }
                let wu = edge_color(pairs, colors, depth, w, u);
                let wv = edge_color(pairs, colors, depth, w, v);
                if wu == Some(color) && wv == Some(color) {
                    common.push(w);
                }
            }
            match size {
                3 => !common.is_empty(),
                4 => common.iter().enumerate().any(|(i, &w)| {
                    common[i + 1..]
                        .iter()
                        .any(|&x| edge_color(pairs, colors, depth, w, x) == Some(color))
                }),
                _ => unreachable!(),
            }
        }
        fn edge_color(
            pairs: &[(usize, usize)],
            colors: &[usize],
            depth: usize,
            a: usize,
            b: usize,
        ) -> Option<usize> {
            let (x, y) = (a.min(b), a.max(b));
            pairs[..depth]
                .iter()
                .position(|&p| p == (x, y))
                .map(|i| colors[i])
        }
        fn rec(
            pairs: &[(usize, usize)],
            colors: &mut Vec<usize>,
            depth: usize,
            q: usize,
            out: &mut HashSet<CanonicalKey>,
        ) {
            if depth == pairs.len() {
                let mut b = ColoringBuilder::new(q.max(2), 2, 0).unwrap();
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    b.set_color(u, v, colors[i]).unwrap();
                }
                let g = if q == 1 {
                    EdgeColoring::single_vertex(2)
                } else {
                    b.build()
                };
                for labels in all_labelings(q) {
                    let cfg = StructureConfig {
                        reduced: g.clone(),
                        labels,
                    };
                    if cfg.is_valid(3, 4) {
                        out.insert(cfg.canonical());
                    }
                }
                return;
            }
            for color in [RED, BLUE] {
                let forbidden = if color == RED {
                    closes_clique(pairs, colors, depth, RED, 3, q)
                } else {
                    closes_clique(pairs, colors, depth, BLUE, 4, q)
                };
                if !forbidden {
                    colors[depth] = color;
                    rec(pairs, colors, depth + 1, q, out);
                }
            }
        }
        fn all_labelings(q: usize) -> Vec<Vec<PartLabel>> {
            let mut out = Vec::new();
            for code in 0..3u32.pow(q as u32) {
                let mut rest = code;
                out.push(
                    (0..q)
                        .map(|_| {
                            let l = match rest % 3 {
                                0 => PartLabel::Free,
                                1 => PartLabel::Red,
                                _ => PartLabel::Blue,
                            };
                            rest /= 3;
                            l
                        })
                        .collect(),
                );
            }
            out
        }
        rec(&pairs, &mut colors, 0, q, &mut brute);
    }
    let enumerated: HashSet<CanonicalKey> = enumerate_configs(3, 4)
        .unwrap()
        .into_iter()
        .map(|c| c.canonical())
        .collect();
    assert_eq!(brute, enumerated);
}

/// Every enumerated (5,3) configuration blows up into a verified witness,
/// and labelings are closed under the validity predicate.
#[test]
fn config_soundness_53() {
    let configs = enumerate_configs(5, 3).unwrap();
    assert!(!configs.is_empty());
    for cfg in &configs {
        assert!(cfg.is_valid(5, 3));
        let blown = gallai_core::weights::blowup_config(cfg, 5, 3).unwrap();
        assert!(verify_witness(&blown, 5, 3).unwrap());
    }
    // the labeling enumerator agrees with a direct filter on one graph
    let pentagon = circulant(5, &[1, 4]).unwrap();
    let via_enum = valid_labelings(&pentagon, 5, 3).len();
    let direct = (0..3u32.pow(5))
        .filter(|&code| {
            let mut rest = code;
            let labels: Vec<PartLabel> = (0..5)
                .map(|_| {
                    let l = match rest % 3 {
                        0 => PartLabel::Free,
                        1 => PartLabel::Red,
                        _ => PartLabel::Blue,
                    };
                    rest /= 3;
                    l
                })
                .collect();
            StructureConfig {
                reduced: pentagon.clone(),
                labels,
            }
            .is_valid(5, 3)
        })
        .count();
    assert_eq!(via_enum, direct);
}

proptest! {
    /// Neighborhood bitsets partition the other vertices after any mutation
    /// sequence, and class sizes sum to the edge count.
    #[test]
    fn builder_invariants_hold(
        n in 2usize..12,
        k in 1usize..5,
        edits in prop::collection::vec((0usize..12, 0usize..12, 0usize..5), 0..40)
    ) {
        let mut b = ColoringBuilder::new(n, k, 0).unwrap();
        for (u, v, c) in edits {
            if u < n && v < n && u != v && c < k {
                b.set_color(u, v, c).unwrap();
            }
        }
        let g = b.build();
        prop_assert!(g.check_invariants());
        prop_assert_eq!(g.class_sizes().iter().sum::<usize>(), g.edge_count());
        for v in 0..n {
            let mut union = gallai_core::VertexSet::empty(n);
            let mut total = 0;
            for c in 0..k {
                total += g.neighbors(c, v).len();
                union.union_with(g.neighbors(c, v));
            }
            prop_assert_eq!(total, n - 1);
            prop_assert_eq!(union.len(), n - 1);
            prop_assert!(!union.contains(v));
        }
    }

    /// gec text serialization is bit-exact and round-trips.
    #[test]
    fn gec_round_trip(
        n in 1usize..15,
        k in 1usize..6,
        seed in any::<u64>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = ColoringBuilder::new(n, k, 0).unwrap();
        for u in 0..n {
            for v in (u + 1)..n {
                b.set_color(u, v, rng.gen_range(0..k)).unwrap();
            }
        }
        let g = b.build();
        let text = g.to_gec();
        prop_assert_eq!(EdgeColoring::from_gec(&text).unwrap(), g.clone());
        let expected_lines = if n == 1 { 2 } else { n + 1 };
        prop_assert_eq!(text.matches('\n').count(), expected_lines);
        prop_assert!(!text.contains(" \n"));
    }

    /// restrict composes: restricting twice equals restricting to the
    /// composed index set.
    #[test]
    fn restrict_composition(
        n in 2usize..12,
        seed in any::<u64>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..4);
        let mut b = ColoringBuilder::new(n, k, 0).unwrap();
        for u in 0..n {
            for v in (u + 1)..n {
                b.set_color(u, v, rng.gen_range(0..k)).unwrap();
            }
        }
        let g = b.build();
        let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        prop_assume!(!a.is_empty());
        let inner_idx: Vec<usize> = (0..a.len()).filter(|_| rng.gen_bool(0.7)).collect();
        prop_assume!(!inner_idx.is_empty());
        let sa = gallai_core::VertexSet::from_iter(n, a.iter().copied());
        let ga = g.restrict(&sa).unwrap();
        let si = gallai_core::VertexSet::from_iter(a.len(), inner_idx.iter().copied());
        let twice = ga.restrict(&si).unwrap();
        let composed: Vec<usize> = inner_idx.iter().map(|&i| a[i]).collect();
        let sc = gallai_core::VertexSet::from_iter(n, composed);
        prop_assert_eq!(twice, g.restrict(&sc).unwrap());
    }
}
