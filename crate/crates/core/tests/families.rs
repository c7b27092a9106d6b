use clutter_core::classify::{is_forbidden_minor, is_forbidden_subclutter};
use clutter_core::decomp::{is_shellable, DecompositionCache};
use clutter_core::face::k_subsets;
use clutter_core::families::{
    make_complete_uniform, make_cycle_graph, make_cyclic_uniform, make_deleted_crosspolytope,
    make_two_facet_complement,
};
use clutter_core::structure::{has_free_vertex_property, simplicial_vertices};
use clutter_core::{isomorphic, is_chordal, BitFace, ChordalityCache, Clutter, SimplicialComplex};

/// Contracts every vertex of `s`, highest first so lower indices stay put.
fn contract_set(c: &Clutter, s: BitFace) -> Clutter {
    let mut vs: Vec<usize> = s.vertices().collect();
    vs.reverse();
    vs.into_iter().fold(c.clone(), |acc, v| acc.contract_vertex(v).unwrap())
}

fn complex_of(n: usize, facets: impl IntoIterator<Item = Vec<usize>>) -> SimplicialComplex {
    SimplicialComplex::new(n, facets.into_iter().map(BitFace::from_vertices)).unwrap()
}

#[test]
fn cyclic_uniform_simplicial_vertices() {
    for n in 3..=8 {
        for k in 2..=n {
            let z = make_cyclic_uniform(n, k).unwrap();
            let simplicial = simplicial_vertices(&z);
            if k >= n - 1 {
                assert_eq!(simplicial, (0..n).collect::<Vec<_>>(), "Z({n},{k})");
            } else {
                assert!(simplicial.is_empty(), "Z({n},{k}) has {simplicial:?}");
            }
        }
    }
}

#[test]
fn cyclic_uniform_forbidden_subclutters() {
    let cache = ChordalityCache::new();
    for n in 4..=8 {
        for k in 2..n - 1 {
            let z = make_cyclic_uniform(n, k).unwrap();
            assert!(!is_chordal(&z, &cache));
            for v in 0..n {
                assert!(has_free_vertex_property(&z.delete_vertex(v).unwrap()), "Z({n},{k}) minus {v}");
            }
            assert!(is_forbidden_subclutter(&z, &cache), "Z({n},{k})");
        }
    }
    assert!(is_forbidden_minor(&make_cyclic_uniform(5, 3).unwrap(), &cache));
}

#[test]
fn cyclic_uniform_contractions() {
    let cache = ChordalityCache::new();
    for n in 3..=8 {
        for k in 3..n {
            for l in 1..n {
                if !(l * k <= n && n <= l * (k + 1)) || n - l < k - 1 {
                    continue;
                }
                let z = make_cyclic_uniform(n, k).unwrap();
                let target = make_cyclic_uniform(n - l, k - 1).unwrap();
                let found = k_subsets(n, l)
                    .into_iter()
                    .any(|s| isomorphic(&contract_set(&z, s), &target).unwrap());
                assert!(found, "Z({n},{k}) has no {l}-fold contraction onto Z({},{})", n - l, k - 1);
            }
        }
    }
    // so Z(6,3) contracts onto the 4-cycle and is not a forbidden minor
    let z63 = make_cyclic_uniform(6, 3).unwrap();
    let c4 = make_cycle_graph(4).unwrap();
    assert!((0..6).any(|a| (a + 1..6).any(|b| isomorphic(
        &contract_set(&z63, BitFace::from_vertices([a, b])),
        &c4
    )
    .unwrap())));
    assert!(!is_forbidden_minor(&z63, &cache));
}

#[test]
fn deleted_crosspolytopes() {
    let cache = ChordalityCache::new();
    let decomp = DecompositionCache::new();
    for n in 2..=4 {
        let x = make_deleted_crosspolytope(n).unwrap();
        assert!(simplicial_vertices(&x).is_empty());
        for v in 0..2 * n {
            assert!(has_free_vertex_property(&x.delete_vertex(v).unwrap()));
            assert!(has_free_vertex_property(&x.contract_vertex(v).unwrap()));
            assert!(isomorphic(&x.delete_vertex(v).unwrap(), &x.delete_vertex(0).unwrap()).unwrap());
            assert!(isomorphic(&x.contract_vertex(v).unwrap(), &x.contract_vertex(0).unwrap()).unwrap());
        }
        assert!(is_forbidden_minor(&x, &cache), "X{n}");

        // cross-polytope boundary with the all-odd and all-even facets removed
        let odds: Vec<usize> = (0..n).map(|i| 2 * i).collect();
        let evens: Vec<usize> = (0..n).map(|i| 2 * i + 1).collect();
        let facets = (0..1u32 << n)
            .map(|pick| (0..n).map(|i| 2 * i + (pick >> i & 1) as usize).collect::<Vec<_>>())
            .filter(|f| *f != odds && *f != evens);
        let expected = complex_of(2 * n, facets);
        let d = x.independence_complex();
        assert_eq!(d, expected);
        assert!(!is_shellable(&d, &decomp));
    }
    assert!(!is_forbidden_minor(&make_deleted_crosspolytope(1).unwrap(), &cache));
}

#[test]
fn two_facet_complements() {
    let cache = ChordalityCache::new();
    let decomp = DecompositionCache::new();
    for n in 2..=4 {
        let y = make_two_facet_complement(n).unwrap();
        assert!(!is_chordal(&y, &cache));
        for (_, minor) in y.minors_one_step() {
            assert!(is_chordal(&minor, &cache));
            // complete uniform, or complete uniform minus one circuit
            let m = minor.n();
            let sizes: Vec<usize> = minor.circuits().iter().map(|c| c.len()).collect();
            if let Some(&d) = sizes.first() {
                assert!(sizes.iter().all(|&s| s == d));
                let full = make_complete_uniform(m, d).unwrap().circuits().len();
                assert!(full - sizes.len() <= 1, "{minor:?}");
            }
        }
        assert!(is_forbidden_minor(&y, &cache), "Y{n}");

        // all faces of dimension n-2 together with two disjoint (n-1)-faces
        let low = BitFace::full(n);
        let high = BitFace::full(2 * n).minus(low);
        let small = k_subsets(2 * n, n - 1).into_iter().filter(|s| !s.is_subset_of(low) && !s.is_subset_of(high));
        let expected = SimplicialComplex::new(2 * n, small.chain([low, high])).unwrap();
        let d = y.independence_complex();
        assert_eq!(d, expected);
        assert!(!is_shellable(&d, &decomp));
    }
}

#[test]
fn small_nonshellable_complexes() {
    // five-vertex Möbius band
    let m5 = complex_of(5, (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]));
    // octahedron boundary with two opposite triangles removed
    let m6 = complex_of(
        6,
        (0..8u32)
            .map(|pick| (0..3).map(|i| 2 * i + (pick >> i & 1) as usize).collect::<Vec<_>>())
            .filter(|f| *f != [0, 2, 4] && *f != [1, 3, 5]),
    );
    // seven-triangle band
    let m7 = complex_of(7, (0..7).map(|i| vec![i, (i + 2) % 7, (i + 4) % 7]));
    let pairs = [
        (m5, make_cyclic_uniform(5, 3).unwrap()),
        (m6, make_deleted_crosspolytope(3).unwrap()),
        (m7, make_cycle_graph(7).unwrap()),
    ];
    let decomp = DecompositionCache::new();
    for (m, c) in pairs {
        assert!(isomorphic(&m.nonface_clutter(), &c).unwrap(), "{c:?}");
        assert!(!is_shellable(&m, &decomp));
    }
}
