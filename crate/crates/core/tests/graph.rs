mod common;

use common::{adjacent, binomial, monochromatic_edges, subsets};
use kneser::graph::{verify_by_edges, verify_coloring, AdjacencyMode, Coloring, ColoringMeta, KneserGraph, VertexSet};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = (u32, u32, u32, bool)> {
    (2u32..=10).prop_flat_map(|n| (1..=n.min(5)).prop_flat_map(move |r| (Just(n), Just(r), 0..r, any::<bool>())))
}

fn mode(at_least: bool) -> AdjacencyMode {
    if at_least {
        AdjacencyMode::AtLeast
    } else {
        AdjacencyMode::Exact
    }
}

#[test]
fn vertices_degrees_and_neighbors_exhaustive() {
    for n in 2..=10u32 {
        for r in 1..=n.min(5) {
            for s in 0..r {
                for at_least in [false, true] {
                    let g = KneserGraph::new(n, r, s, mode(at_least)).unwrap();
                    let vs = subsets(n, r);
                    let got: Vec<Vec<u32>> = g.vertices().map(|v| v.elements().to_vec()).collect();
                    assert_eq!(got, vs, "{g}");
                    let deg: Vec<u64> = vs
                        .iter()
                        .map(|a| vs.iter().filter(|b| adjacent(a, b, s, at_least)).count() as u64)
                        .collect();
                    if !at_least {
                        assert!(deg.iter().all(|&d| d == g.regular_degree()), "{g}");
                    }
                    for (a, &d) in vs.iter().zip(&deg) {
                        let v = VertexSet::new(a.clone()).unwrap();
                        assert_eq!(g.degree(&v).unwrap(), d, "{g} {v}");
                    }
                    if vs.len() <= 60 {
                        for a in &vs {
                            let v = VertexSet::new(a.clone()).unwrap();
                            let mut nb: Vec<Vec<u32>> = g
                                .neighbors(&v)
                                .unwrap()
                                .into_iter()
                                .map(|w| w.elements().to_vec())
                                .collect();
                            nb.sort();
                            let want: Vec<Vec<u32>> =
                                vs.iter().filter(|b| adjacent(a, b, s, at_least)).cloned().collect();
                            assert_eq!(nb, want);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn exact_degree_formula() {
    for (n, r, s) in [(9u32, 4u32, 2u32), (24, 4, 2), (48, 4, 2), (32, 3, 1)] {
        let g = KneserGraph::exact(n, r, s).unwrap();
        let want = binomial(r as u64, s as u64) * binomial((n - r) as u64, (r - s) as u64);
        assert_eq!(g.regular_degree(), want);
    }
    assert_eq!(KneserGraph::exact(24, 4, 2).unwrap().regular_degree() + 1, 1141);
}

proptest! {
    #[test]
    fn rank_unrank_round_trip((n, r, s, at_least) in params(), pick in any::<prop::sample::Index>()) {
        let g = KneserGraph::new(n, r, s, mode(at_least)).unwrap();
        let rank = pick.index(g.vertex_count() as usize) as u64;
        let v = g.unrank(rank).unwrap();
        prop_assert_eq!(g.rank(&v).unwrap(), rank);
        let all = subsets(n, r);
        prop_assert_eq!(v.elements(), all[rank as usize].as_slice());
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive((n, r, s, at_least) in params(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = KneserGraph::new(n, r, s, mode(at_least)).unwrap();
        let c = g.vertex_count() as usize;
        let (u, v) = (g.unrank(i.index(c) as u64).unwrap(), g.unrank(j.index(c) as u64).unwrap());
        prop_assert_eq!(g.adjacent(&u, &v).unwrap(), g.adjacent(&v, &u).unwrap());
        prop_assert!(!g.adjacent(&u, &u).unwrap());
        prop_assert_eq!(g.adjacent(&u, &v).unwrap(), adjacent(u.elements(), v.elements(), s, at_least));
    }

    #[test]
    fn verification_matches_pair_scan((n, r, s, at_least) in params(), k in 1u32..6, seed in any::<u64>()) {
        let g = KneserGraph::new(n, r, s, mode(at_least)).unwrap();
        let total = g.vertex_count() as usize;
        let mut x = seed | 1;
        let mut colors: Vec<u32> = (0..total)
            .map(|_| {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                (x % k as u64) as u32
            })
            .collect();
        // make the ids dense
        let mut ids: Vec<u32> = colors.clone();
        ids.sort_unstable();
        ids.dedup();
        for c in &mut colors {
            *c = ids.binary_search(c).unwrap() as u32;
        }
        let want = monochromatic_edges(n, r, s, at_least, &colors);
        let col = Coloring::new(g.clone(), colors, ColoringMeta::new("test", seed)).unwrap();
        let a = verify_coloring(&g, &col).unwrap();
        let b = verify_by_edges(&g, &col).unwrap();
        prop_assert_eq!(a.violation_count, want);
        prop_assert_eq!(b.violation_count, want);
        prop_assert_eq!(a.proper, want == 0);
        for (u, v) in &a.violations {
            prop_assert!(g.adjacent(u, v).unwrap());
            prop_assert_eq!(col.color_of(u).unwrap(), col.color_of(v).unwrap());
        }
    }

    #[test]
    fn coloring_file_round_trip((n, r, s, at_least) in params(), k in 1u32..5) {
        let g = KneserGraph::new(n, r, s, mode(at_least)).unwrap();
        let colors: Vec<u32> = (0..g.vertex_count() as u32).map(|i| i % k).collect();
        let col = Coloring::compacted(g, colors, ColoringMeta::new("roundtrip", 7)).unwrap();
        let text = col.to_file_string();
        let back = Coloring::read_from(text.as_bytes()).unwrap();
        prop_assert_eq!(back.colors(), col.colors());
        prop_assert_eq!(back.graph(), col.graph());
        prop_assert_eq!(back.meta.seed, 7);
    }
}

#[test]
fn corrupted_file_is_rejected_with_line_number() {
    let g = KneserGraph::exact(4, 2, 0).unwrap();
    let col = Coloring::compacted(g, vec![0, 1, 2, 2, 1, 0], ColoringMeta::new("x", 0)).unwrap();
    let text = col.to_file_string().replace("\n1,3\t1\n", "\n1,3\tbanana\n");
    let err = Coloring::read_from(text.as_bytes()).unwrap_err().to_string();
    assert!(err.contains('3'), "{err}");
}
