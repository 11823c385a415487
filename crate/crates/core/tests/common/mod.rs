//! Naive reference implementations shared by the integration tests. They
//! share no code with the library.

#![allow(dead_code)]

/// All `r`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: u32, r: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, r: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r as usize {
            out.push(cur.clone());
            return;
        }
        for e in start..=n {
            cur.push(e);
            go(e + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn meet(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

pub fn adjacent(a: &[u32], b: &[u32], s: u32, at_least: bool) -> bool {
    let k = meet(a, b) as u32;
    a != b && if at_least { k >= s } else { k == s }
}

/// Number of monochromatic edges, scanning every pair.
pub fn monochromatic_edges(n: u32, r: u32, s: u32, at_least: bool, colors: &[u32]) -> u64 {
    let vs = subsets(n, r);
    assert_eq!(vs.len(), colors.len());
    let mut bad = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if colors[i] == colors[j] && adjacent(&vs[i], &vs[j], s, at_least) {
                bad += 1;
            }
        }
    }
    bad
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
