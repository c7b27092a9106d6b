use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use clutter_core::decomp::{is_k_decomposable, DecompositionCache};
use clutter_core::enumerate::enumerate_clutters;
use clutter_core::families::make_graphic_matroid_circuits;
use clutter_core::structure::{
    gyo_reduce_with, graph_neighborhood_simplicial, has_free_vertex_property, is_matroid_circuit_clutter,
};
use clutter_core::{is_chordal, BitFace, CanonicalKey, ChordalityCache, Clutter};

/// Graph chordality by repeatedly removing a simplicial vertex.
fn graph_is_chordal(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![0u32; n];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut alive: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    while alive != 0 {
        let simplicial = (0..n).filter(|&v| alive >> v & 1 == 1).find(|&v| {
            let nb = adj[v] & alive;
            (0..n).filter(|&u| nb >> u & 1 == 1).all(|u| nb & !(1 << u) & !adj[u] == 0)
        });
        match simplicial {
            Some(v) => alive &= !(1 << v),
            None => return false,
        }
    }
    true
}

fn graph_clutter(n: usize, edges: &[(usize, usize)]) -> Clutter {
    Clutter::new(n, edges.iter().map(|&(a, b)| BitFace::from_vertices([a, b]))).unwrap()
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn edges_of(mask: u64, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect()
}

#[test]
fn graphs_agree_with_elimination_test() {
    let cache = ChordalityCache::new();
    let decomp = DecompositionCache::new();
    let mut six_classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for n in 0..=6 {
        let pairs = all_pairs(n);
        let mut seen = HashSet::new();
        for mask in 0..1u64 << pairs.len() {
            let edges = edges_of(mask, &pairs);
            let g = graph_clutter(n, &edges);
            if !seen.insert(CanonicalKey::of(&g).unwrap()) {
                continue;
            }
            let chordal = graph_is_chordal(n, &edges);
            assert_eq!(is_chordal(&g, &cache), chordal, "graph {edges:?} on {n}");
            let neighborhood = graph_neighborhood_simplicial(&g).unwrap();
            assert!(!chordal || neighborhood, "chordal graph fails the neighborhood condition: {edges:?}");
            if neighborhood {
                let (vd, _) = is_k_decomposable(&g.independence_complex(), 0, &decomp);
                assert!(vd, "neighborhood condition without vertex decomposability: {edges:?}");
            }
            if n == 6 {
                six_classes.push(edges);
            }
        }
    }
    // every 7-vertex graph is a 6-vertex graph plus a neighborhood for vertex 6
    for base in &six_classes {
        for nb in 0..1u32 << 6 {
            let mut edges = base.clone();
            edges.extend((0..6).filter(|&u| nb >> u & 1 == 1).map(|u| (u, 6)));
            let chordal = graph_is_chordal(7, &edges);
            assert_eq!(is_chordal(&graph_clutter(7, &edges), &cache), chordal, "graph {edges:?} on 7");
        }
    }
}

#[test]
fn free_vertex_property_and_matroids_imply_chordal() {
    let cache = ChordalityCache::new();
    let mut fvp = 0;
    let mut matroids = 0;
    for n in 0..=5 {
        for c in enumerate_clutters(n).unwrap() {
            let chordal = is_chordal(&c, &cache);
            if has_free_vertex_property(&c) {
                fvp += 1;
                assert!(chordal, "{c:?}");
            }
            if is_matroid_circuit_clutter(&c) {
                matroids += 1;
                assert!(chordal, "{c:?}");
            }
        }
    }
    assert!(fvp > 0 && matroids > 0);
    let k4 = make_graphic_matroid_circuits(&all_pairs(4)).unwrap();
    assert!(is_matroid_circuit_clutter(&k4));
    assert!(is_chordal(&k4, &cache));
}

#[test]
fn example_clutter_is_chordal_and_nothing_simpler() {
    let cache = ChordalityCache::new();
    let c = Clutter::from_lists(6, &[&[0, 1, 2], &[0, 3, 4], &[1, 2, 3, 4], &[1, 2, 5], &[3, 4, 5]]);
    assert!(is_chordal(&c, &cache));
    assert!(!c.is_uniform(2));
    assert!(!is_matroid_circuit_clutter(&c));
    assert!(!has_free_vertex_property(&c));
}

#[test]
fn gyo_order_independent() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 0..=5 {
        for c in enumerate_clutters(n).unwrap() {
            let expected = has_free_vertex_property(&c);
            for _ in 0..4 {
                let verdict = gyo_reduce_with(&c, |free| *free.choose(&mut rng).unwrap() % n.max(1));
                assert_eq!(verdict, expected, "{c:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gyo_random_orders(masks in prop::collection::vec(1u32..1 << 7, 0..7), picks in prop::collection::vec(any::<usize>(), 16)) {
        let c = Clutter::from_minimal_sets(7, masks.into_iter().map(BitFace::from_bits)).unwrap();
        let mut i = 0;
        let verdict = gyo_reduce_with(&c, |free| {
            i += 1;
            picks[i % picks.len()] % free.len()
        });
        prop_assert_eq!(verdict, has_free_vertex_property(&c));
    }
}
