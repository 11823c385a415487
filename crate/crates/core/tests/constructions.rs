mod common;

use common::{binomial, distinct, meet, monochromatic_edges, subsets};
use kneser::boolean31::color_g_n31;
use kneser::designs::{
    check_design, one_factorization, resolution_color_count, resolution_coloring, star_family, DesignFamily,
    DesignFile, Resolution,
};
use kneser::graph::{verify_coloring, KneserGraph, VertexSet};
use kneser::solver::{list_coloring_with_retries, list_size_bound, ListAssignment};
use proptest::prelude::*;

#[test]
fn boolean31_counts_and_properness() {
    for t in 2..=5u32 {
        let n = 1u32 << t;
        let c = color_g_n31(t).unwrap();
        let want = ((n - 1) * (n - 2) / 6) as usize;
        assert_eq!(c.num_colors(), want, "n={n}");
        assert!(verify_coloring(c.graph(), &c).unwrap().proper);
        if n <= 16 {
            assert_eq!(monochromatic_edges(n, 3, 1, false, c.colors()), 0);
        }
        // every class has exactly n members
        let mut sizes = vec![0u32; want];
        for &x in c.colors() {
            sizes[x as usize] += 1;
        }
        assert!(sizes.iter().all(|&s| s == n), "n={n}");
    }
}

/// Two triples get the same color iff one is a translate of the other by
/// XOR, checked directly on the binary labels `e - 1`.
#[test]
fn boolean31_classes_are_translation_classes() {
    let c = color_g_n31(3).unwrap();
    let vs = subsets(8, 3);
    let lab = |v: &[u32]| -> Vec<u32> { v.iter().map(|e| e - 1).collect() };
    for i in 0..vs.len() {
        for j in 0..vs.len() {
            let (a, b) = (lab(&vs[i]), lab(&vs[j]));
            let translate = (0..8u32).any(|z| {
                let mut m: Vec<u32> = a.iter().map(|x| x ^ z).collect();
                m.sort_unstable();
                m == b
            });
            assert_eq!(c.colors()[i] == c.colors()[j], translate);
        }
    }
}

#[test]
fn round_robin_gives_n_minus_one_colors() {
    for n in [4u32, 6, 8, 10, 12] {
        let res = one_factorization(n).unwrap();
        res.validate().unwrap();
        assert_eq!(res.len() as u32, n - 1);
        assert_eq!(resolution_color_count(n, 2, 1), Some((n - 1) as u64));
        let g = KneserGraph::exact(n, 2, 1).unwrap();
        let c = resolution_coloring(&res, &g).unwrap();
        assert_eq!(c.num_colors() as u32, n - 1);
        assert_eq!(monochromatic_edges(n, 2, 1, false, c.colors()), 0);
        // each part is a perfect matching
        for part in &res.parts {
            let mut seen = vec![0; n as usize + 1];
            for b in part.blocks() {
                for &e in b.elements() {
                    seen[e as usize] += 1;
                }
            }
            assert!(seen[1..].iter().all(|&k| k == 1));
        }
    }
    assert!(one_factorization(7).is_err());
}

fn vs(e: &[u32]) -> VertexSet {
    VertexSet::new(e.to_vec()).unwrap()
}

/// The 1-factorization of K_4 read as a design file, and the Fano plane as
/// a single-part exact design.
#[test]
fn design_files() {
    let text = "#design n=4 r=2 s=1 union_s=2\n1,2\n3,4\n%\n1,3\n2,4\n%\n1,4\n2,3\n";
    let f = DesignFile::read_from(text.as_bytes()).unwrap();
    let res = f.resolution().unwrap();
    res.validate().unwrap();
    let mut out = Vec::new();
    DesignFile::write_resolution(&res, &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), text);

    let fano = "#design n=7 r=3 s=2\n1,2,3\n1,4,5\n1,6,7\n2,4,6\n2,5,7\n3,4,7\n3,5,6\n";
    let f = DesignFile::read_from(fano.as_bytes()).unwrap();
    let rep = check_design(&f.family().unwrap()).unwrap();
    assert!(rep.exact_pass && rep.approx_pass);
    assert_eq!(rep.uncovered_count, 0);

    let bad = "#design n=7 r=3 s=2\n1,2,3\n1,2,4\n";
    let rep = check_design(&DesignFile::read_from(bad.as_bytes()).unwrap().family().unwrap()).unwrap();
    assert!(!rep.approx_pass);
    assert_eq!(rep.multi_covered_count, 1);

    let broken = "#design n=7 r=3 s=2\n1,2,3\n1,2,x\n";
    let err = DesignFile::read_from(broken.as_bytes()).unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");

    // a part that is not a matching
    let parts = vec![
        DesignFamily::new(4, 2, 1, vec![vs(&[1, 2]), vs(&[1, 3])]).unwrap(),
        DesignFamily::new(4, 2, 1, vec![vs(&[1, 4]), vs(&[2, 3]), vs(&[2, 4]), vs(&[3, 4])]).unwrap(),
    ];
    assert!(Resolution::from_parts(parts, 2).unwrap().validate().is_err());
}

proptest! {
    /// Coverage counts agree with a direct count over the s-subsets.
    #[test]
    fn design_check_matches_direct_count(n in 4u32..9, r in 2u32..4, s in 1u32..3, mask in any::<u64>()) {
        prop_assume!(s <= r && r <= n);
        let all = subsets(n, r);
        let blocks: Vec<Vec<u32>> = all.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, b)| b.clone()).collect();
        let fam = DesignFamily::new(n, r, s, blocks.iter().map(|b| vs(b)).collect()).unwrap();
        let rep = check_design(&fam).unwrap();
        let (mut unc, mut multi) = (0u64, 0u64);
        for t in subsets(n, s) {
            let k = blocks.iter().filter(|b| t.iter().all(|e| b.contains(e))).count();
            if k == 0 { unc += 1 }
            if k > 1 { multi += 1 }
        }
        prop_assert_eq!(rep.uncovered_count, unc);
        prop_assert_eq!(rep.multi_covered_count, multi);
        prop_assert_eq!(rep.exact_pass, unc == 0 && multi == 0);
        prop_assert_eq!(rep.approx_pass, multi == 0);
    }
}

#[test]
fn stars_are_independent_of_the_right_size() {
    for n in 2..=9u32 {
        for r in 1..=n {
            for s in 0..r {
                if s + 1 > r {
                    continue;
                }
                let core: Vec<u32> = (1..=s + 1).collect();
                let star = star_family(n, r, &vs(&core));
                assert_eq!(star.len() as u64, binomial((n - s - 1) as u64, (r - s - 1) as u64));
                for a in &star {
                    for b in &star {
                        assert!(a == b || meet(a.elements(), b.elements()) > s as usize);
                    }
                }
            }
        }
    }
}

#[test]
fn list_coloring_classes_share_an_element() {
    for n in [6u32, 8] {
        let g = KneserGraph::exact(n, 2, 0).unwrap();
        let m = list_size_bound(n, 2, 0);
        assert_eq!(m as f64, (2.0 * n as f64 * (n as f64).ln()).ceil());
        let lists = ListAssignment::uniform(&g, m);
        let (lc, _) = list_coloring_with_retries(&g, &lists, m, 11, 32).unwrap();
        assert_eq!(monochromatic_edges(n, 2, 0, false, lc.coloring.colors()), 0);
        for class in lc.coloring.classes() {
            let sets: Vec<VertexSet> = class.iter().map(|&r| g.unrank(r).unwrap()).collect();
            let common = (1..=n).any(|e| sets.iter().all(|v| v.contains(e)));
            assert!(common);
        }
        for (rank, &c) in lc.chosen.iter().enumerate() {
            assert!(lists.list(rank as u64).contains(&c));
            let v = g.unrank(rank as u64).unwrap();
            assert!(lc.phi[&c].iter().all(|&e| v.contains(e as u32 + 1)));
        }
        let again = list_coloring_with_retries(&g, &lists, m, 11, 32).unwrap();
        assert_eq!(again.0.chosen, lc.chosen);
        assert_eq!(distinct(&lc.chosen), lc.coloring.num_colors());
    }
}
