mod common;

use common::{adjacent, subsets};
use kneser::graph::{AdjacencyMode, KneserGraph};
use kneser::solver::{
    alpha_exact, chi_exact, chi_exact_with_witness, clique_number, cover_combine, cover_combine_kneser,
    greedy_explicit, greedy_extend, CoverSystem, ExactConfig, ExplicitGraph, GreedyListOracle, KneserTracker,
    ScanTracker, UNCOLORED,
};
use proptest::prelude::*;

/// Adjacency matrix built directly from the subsets.
fn matrix(n: u32, r: u32, s: u32, at_least: bool) -> Vec<Vec<bool>> {
    let vs = subsets(n, r);
    vs.iter()
        .map(|a| vs.iter().map(|b| adjacent(a, b, s, at_least)).collect())
        .collect()
}

fn colorable(adj: &[Vec<bool>], k: usize, colors: &mut Vec<usize>) -> bool {
    let v = colors.len();
    if v == adj.len() {
        return true;
    }
    let top = colors.iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..k.min(top + 1) {
        if (0..v).all(|u| !adj[v][u] || colors[u] != c) {
            colors.push(c);
            if colorable(adj, k, colors) {
                return true;
            }
            colors.pop();
        }
    }
    false
}

fn brute_chi(adj: &[Vec<bool>]) -> usize {
    (0..=adj.len()).find(|&k| colorable(adj, k, &mut Vec::new())).unwrap()
}

fn brute_alpha(adj: &[Vec<bool>]) -> usize {
    let v = adj.len();
    assert!(v <= 20);
    (0u32..1 << v)
        .filter(|m| (0..v).all(|a| m >> a & 1 == 0 || (a + 1..v).all(|b| m >> b & 1 == 0 || !adj[a][b])))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

fn small_graphs() -> Vec<(u32, u32, u32, bool)> {
    let mut out = Vec::new();
    for n in 2..=7u32 {
        for r in 1..=n {
            for s in 0..r {
                for at_least in [false, true] {
                    if subsets(n, r).len() <= 20 {
                        out.push((n, r, s, at_least));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn exact_solvers_match_brute_force() {
    let cfg = ExactConfig::default();
    for (n, r, s, at_least) in small_graphs() {
        let mode = if at_least {
            AdjacencyMode::AtLeast
        } else {
            AdjacencyMode::Exact
        };
        let g = ExplicitGraph::from_kneser(&KneserGraph::new(n, r, s, mode).unwrap()).unwrap();
        let adj = matrix(n, r, s, at_least);
        let chi = chi_exact(&g, &cfg).unwrap();
        assert_eq!(chi, brute_chi(&adj), "G({n},{r},{s}) {at_least}");
        assert_eq!(alpha_exact(&g, &cfg).unwrap(), brute_alpha(&adj));
        let omega = clique_number(&g, &cfg).unwrap();
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        let greedy = greedy_explicit(&g, &order).iter().max().map_or(0, |&c| c as usize + 1);
        assert!(omega <= chi && chi <= greedy);
        let (k, w) = chi_exact_with_witness(&g, &cfg).unwrap();
        assert_eq!(k, chi);
        for a in 0..adj.len() {
            for b in 0..adj.len() {
                assert!(!adj[a][b] || w[a] != w[b]);
            }
        }
    }
}

#[test]
fn lovasz_values() {
    let cfg = ExactConfig::default();
    for (n, r, want) in [(5u32, 2u32, 3usize), (6, 2, 4), (7, 3, 3), (4, 2, 2), (6, 3, 2)] {
        let g = ExplicitGraph::from_kneser(&KneserGraph::exact(n, r, 0).unwrap()).unwrap();
        assert_eq!(chi_exact(&g, &cfg).unwrap(), want, "n={n} r={r}");
    }
    let g = ExplicitGraph::from_kneser(&KneserGraph::exact(4, 2, 1).unwrap()).unwrap();
    assert_eq!(chi_exact(&g, &cfg).unwrap(), 3);
}

#[test]
fn node_limit_refuses_instead_of_guessing() {
    let g = ExplicitGraph::from_kneser(&KneserGraph::exact(7, 3, 0).unwrap()).unwrap();
    let cfg = ExactConfig {
        node_limit: Some(1),
        ..ExactConfig::default()
    };
    assert!(chi_exact(&g, &cfg).is_err());
}

fn random_graph(n: usize, p: u32, seed: u64) -> ExplicitGraph {
    let mut x = seed | 1;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            if (x % 100) < p as u64 {
                edges.push((a, b));
            }
        }
    }
    ExplicitGraph::from_edges(n, edges).unwrap()
}

proptest! {
    /// With l above every part's internal degree and d the largest external
    /// degree, the combiner succeeds inside its palette.
    #[test]
    fn cover_combine_stays_in_palette(n in 1usize..40, p in 0u32..60, parts in 1usize..5, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let assign: Vec<usize> = (0..n).map(|v| (v * 7 + seed as usize) % parts).collect();
        let cover_parts: Vec<Vec<u64>> = (0..parts).map(|i| (0..n as u64).filter(|&v| assign[v as usize] == i).collect()).collect();
        let internal = (0..n).map(|v| g.neighbors(v).filter(|&w| assign[w] == assign[v]).count()).max().unwrap_or(0);
        let external = (0..n).map(|v| g.neighbors(v).filter(|&w| assign[w] != assign[v]).count()).max().unwrap_or(0);
        let cover = CoverSystem::new(cover_parts, internal + 1, external);
        let c = cover_combine(&g, &cover, &GreedyListOracle).unwrap();
        prop_assert!(c.iter().all(|&x| (x as usize) < cover.palette()));
        for a in 0..n {
            for b in g.neighbors(a) {
                prop_assert_ne!(c[a], c[b]);
            }
        }
    }

    /// The counting tracker and the scanning tracker pick the same colors.
    #[test]
    fn trackers_agree(n in 5u32..10, r in 2u32..5, s in 0u32..4, at_least in any::<bool>(), seed in any::<u64>()) {
        prop_assume!(s < r && r <= n);
        let mode = if at_least { AdjacencyMode::AtLeast } else { AdjacencyMode::Exact };
        let g = KneserGraph::new(n, r, s, mode).unwrap();
        let total = g.vertex_count();
        let mut order: Vec<u64> = (0..total).collect();
        let mut x = seed | 1;
        for i in (1..order.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            order.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let mut a = vec![UNCOLORED; total as usize];
        let mut b = vec![UNCOLORED; total as usize];
        let ka = greedy_extend(&g, order.iter().copied(), &mut a, &mut KneserTracker::new(&g).unwrap());
        let kb = greedy_extend(&g, order.iter().copied(), &mut b, &mut ScanTracker::new(&g));
        prop_assert_eq!(ka, kb);
        prop_assert_eq!(&a, &b);
        let adj = matrix(n, r, s, at_least);
        for i in 0..adj.len() {
            for j in 0..adj.len() {
                prop_assert!(!adj[i][j] || a[i] != a[j]);
            }
        }
        let mut c = vec![UNCOLORED; total as usize];
        let cover = CoverSystem::new(vec![order.clone()], g.regular_degree() as usize + 1, 0);
        let used = cover_combine_kneser(&g, &cover, &mut c, &mut KneserTracker::new(&g).unwrap()).unwrap();
        prop_assert_eq!(used, ka);
    }
}
