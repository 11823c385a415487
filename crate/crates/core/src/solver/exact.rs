//! Exact chromatic number, clique number and independence number for small
//! graphs. These are the brute-force oracles the constructions are checked
//! against, so they never approximate: past the vertex cap they refuse.

use rand::Rng;

use super::explicit::{iter_bits, ExplicitGraph};
use super::SolverError;
use crate::rng;

/// Default vertex cap for the exact solvers.
pub const DEFAULT_EXACT_CAP: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactConfig {
    pub cap: usize,
    /// Abort with [`SolverError::SearchLimit`] after this many search nodes.
    pub node_limit: Option<u64>,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_EXACT_CAP,
            node_limit: None,
        }
    }
}

impl ExactConfig {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap, ..Self::default() }
    }

    fn check(&self, g: &ExplicitGraph) -> Result<(), SolverError> {
        if g.vertex_count() > self.cap {
            return Err(SolverError::CapExceeded {
                vertices: g.vertex_count(),
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// A maximum clique (vertex indices, ascending).
pub fn max_clique(g: &ExplicitGraph, cfg: &ExactConfig) -> Result<Vec<usize>, SolverError> {
    cfg.check(g)?;
    // relabel by decreasing degree so the coloring bound is tight early
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let h = g.induced(&perm);
    let mut search = CliqueSearch {
        g: &h,
        best: Vec::new(),
        nodes: 0,
        limit: cfg.node_limit.unwrap_or(u64::MAX),
    };
    let mut p = vec![0u64; h.words()];
    for v in 0..h.vertex_count() {
        p[v / 64] |= 1 << (v % 64);
    }
    search.expand(&mut Vec::new(), p)?;
    let mut best: Vec<usize> = search.best.iter().map(|&v| perm[v]).collect();
    best.sort_unstable();
    Ok(best)
}

pub fn clique_number(g: &ExplicitGraph, cfg: &ExactConfig) -> Result<usize, SolverError> {
    Ok(max_clique(g, cfg)?.len())
}

/// Size of a maximum independent set, as a maximum clique of the complement.
pub fn alpha_exact(g: &ExplicitGraph, cfg: &ExactConfig) -> Result<usize, SolverError> {
    cfg.check(g)?;
    clique_number(&g.complement(), cfg)
}

struct CliqueSearch<'a> {
    g: &'a ExplicitGraph,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<u64>) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(SolverError::SearchLimit(self.limit));
        }
        let (order, bound) = self.color_sort(&p);
        for idx in (0..order.len()).rev() {
            if r.len() + bound[idx] <= self.best.len() {
                return Ok(());
            }
            let v = order[idx];
            r.push(v);
            let np: Vec<u64> = p.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if np.iter().all(|&w| w == 0) {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np)?;
            }
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
        Ok(())
    }

    /// Greedy sequential coloring of `p`; returns vertices in color order
    /// and the color (1-based) of each, an upper bound on the clique size
    /// among that vertex and its predecessors.
    fn color_sort(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut bound = Vec::new();
        let mut q = p.to_vec();
        let mut k = 0;
        while q.iter().any(|&w| w != 0) {
            k += 1;
            let mut qk = q.clone();
            loop {
                let Some(v) = iter_bits(&qk).next() else { break };
                q[v / 64] &= !(1 << (v % 64));
                qk[v / 64] &= !(1 << (v % 64));
                for (w, a) in qk.iter_mut().zip(self.g.row(v)) {
                    *w &= !a;
                }
                order.push(v);
                bound.push(k);
            }
        }
        (order, bound)
    }
}

/// Exact chromatic number by DSATUR branch and bound.
///
/// The lower bound is the larger of the clique number and `⌈|V|/α⌉` (the
/// latter only when the independence number is found within the node
/// limit); the search proves optimality of the best coloring found.
/// Returns the number together with a witness coloring indexed by vertex.
pub fn chi_exact_with_witness(g: &ExplicitGraph, cfg: &ExactConfig) -> Result<(usize, Vec<u32>), SolverError> {
    cfg.check(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let clique = max_clique(g, cfg)?;
    let (ub, witness) = dsatur_greedy(g);
    if ub == clique.len() {
        return Ok((ub, witness));
    }
    let mut lb = clique.len();
    if let Ok(alpha) = alpha_exact(g, cfg) {
        lb = lb.max(n.div_ceil(alpha));
    }
    if ub == lb {
        return Ok((ub, witness));
    }
    let (ub, witness) = tabu_improve(g, lb, ub, witness);
    if ub == lb {
        return Ok((ub, witness));
    }
    let mut bb = Dsatur::new(g, ub, witness, cfg.node_limit.unwrap_or(u64::MAX));
    for (c, &v) in clique.iter().enumerate() {
        bb.assign(v, c as u32);
    }
    bb.search(clique.len(), lb)?;
    Ok((bb.ub, bb.best))
}

pub fn chi_exact(g: &ExplicitGraph, cfg: &ExactConfig) -> Result<usize, SolverError> {
    chi_exact_with_witness(g, cfg).map(|(k, _)| k)
}

const NONE: u32 = u32::MAX;

/// Plain DSATUR heuristic: an initial upper bound.
fn dsatur_greedy(g: &ExplicitGraph) -> (usize, Vec<u32>) {
    let n = g.vertex_count();
    let mut st = Dsatur::new(g, n + 1, vec![0; n], u64::MAX);
    let mut used = 0;
    for _ in 0..n {
        let v = st.select();
        let c = (0..=used as u32).find(|&c| st.forb(v, c) == 0).expect("a free color");
        st.assign(v, c);
        used = used.max(c as usize + 1);
    }
    (used, st.color)
}

/// Tabu moves spent on each target color count.
const TABU_ITERATIONS: u64 = 200_000;

/// Lowers the upper bound with a tabu local search on conflicting vertices,
/// one target `k` at a time from `ub - 1` down to `lb`. Fixed seed, so the
/// outcome is reproducible.
fn tabu_improve(g: &ExplicitGraph, lb: usize, mut ub: usize, mut best: Vec<u32>) -> (usize, Vec<u32>) {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut rng = rng::stream(0x7ab0, 0);
    while ub > lb {
        let k = ub - 1;
        // start from the best coloring with the top color folded in
        let mut color: Vec<usize> = best.iter().map(|&c| (c as usize).min(k - 1)).collect();
        let mut gamma = vec![0u32; n * k];
        for v in 0..n {
            for &w in &adj[v] {
                gamma[v * k + color[w]] += 1;
            }
        }
        let mut conflicts: u64 = (0..n).map(|v| gamma[v * k + color[v]] as u64).sum::<u64>() / 2;
        let mut tabu = vec![0u64; n * k];
        let mut it = 0;
        while conflicts > 0 && it < TABU_ITERATIONS {
            it += 1;
            let mut pick: Option<(i64, usize, usize)> = None;
            let mut ties = 0u32;
            for v in 0..n {
                let own = gamma[v * k + color[v]];
                if own == 0 {
                    continue;
                }
                for c in 0..k {
                    if c == color[v] {
                        continue;
                    }
                    let delta = gamma[v * k + c] as i64 - own as i64;
                    let allowed = tabu[v * k + c] <= it || (conflicts as i64 + delta) == 0;
                    if !allowed {
                        continue;
                    }
                    match pick {
                        Some((d, _, _)) if delta > d => {}
                        Some((d, _, _)) if delta == d => {
                            ties += 1;
                            if rng.gen_range(0..ties) == 0 {
                                pick = Some((delta, v, c));
                            }
                        }
                        _ => {
                            ties = 1;
                            pick = Some((delta, v, c));
                        }
                    }
                }
            }
            let Some((delta, v, c)) = pick else { break };
            let old = color[v];
            color[v] = c;
            for &w in &adj[v] {
                gamma[w * k + old] -= 1;
                gamma[w * k + c] += 1;
            }
            conflicts = (conflicts as i64 + delta) as u64;
            let conflicting = (0..n).filter(|&u| gamma[u * k + color[u]] > 0).count() as u64;
            tabu[v * k + old] = it + rng.gen_range(0..10) + conflicting * 6 / 10;
        }
        if conflicts > 0 {
            break;
        }
        ub = k;
        best = color.iter().map(|&c| c as u32).collect();
    }
    (ub, best)
}

struct Dsatur<'a> {
    g: &'a ExplicitGraph,
    k: usize,
    color: Vec<u32>,
    forb: Vec<u16>,
    sat: Vec<u32>,
    free_deg: Vec<u32>,
    uncolored: usize,
    ub: usize,
    best: Vec<u32>,
    nodes: u64,
    limit: u64,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a ExplicitGraph, ub: usize, best: Vec<u32>, limit: u64) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            k: ub,
            color: vec![NONE; n],
            forb: vec![0; n * ub],
            sat: vec![0; n],
            free_deg: (0..n).map(|v| g.degree(v) as u32).collect(),
            uncolored: n,
            ub,
            best,
            nodes: 0,
            limit,
        }
    }

    #[inline]
    fn forb(&self, v: usize, c: u32) -> u16 {
        self.forb[v * self.k + c as usize]
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.color[v] = c;
        self.uncolored -= 1;
        for w in self.g.neighbors(v) {
            self.free_deg[w] -= 1;
            if self.color[w] == NONE {
                let slot = &mut self.forb[w * self.k + c as usize];
                if *slot == 0 {
                    self.sat[w] += 1;
                }
                *slot += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        self.uncolored += 1;
        for w in self.g.neighbors(v) {
            self.free_deg[w] += 1;
            if self.color[w] == NONE {
                let slot = &mut self.forb[w * self.k + c as usize];
                *slot -= 1;
                if *slot == 0 {
                    self.sat[w] -= 1;
                }
            }
        }
    }

    /// Uncolored vertex of largest saturation, then largest degree into
    /// the uncolored part, then smallest index.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0, 0);
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            let k = (self.sat[v], self.free_deg[v]);
            if best == usize::MAX || k > key {
                best = v;
                key = k;
            }
        }
        best
    }

    fn search(&mut self, used: usize, lb: usize) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(SolverError::SearchLimit(self.limit));
        }
        if self.uncolored == 0 {
            self.ub = used;
            self.best = self.color.clone();
            return Ok(());
        }
        let v = self.select();
        let top = (used + 1).min(self.ub - 1);
        for c in 0..top as u32 {
            if self.forb(v, c) != 0 {
                continue;
            }
            self.assign(v, c);
            self.search(used.max(c as usize + 1), lb)?;
            self.unassign(v);
            if self.ub <= lb {
                return Ok(());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ExplicitGraph {
        ExplicitGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_known_values() {
        let cfg = ExactConfig::default();
        assert_eq!(chi_exact(&cycle(5), &cfg).unwrap(), 3);
        assert_eq!(chi_exact(&cycle(6), &cfg).unwrap(), 2);
        assert_eq!(chi_exact(&ExplicitGraph::complete(6), &cfg).unwrap(), 6);
        assert_eq!(chi_exact(&ExplicitGraph::new(4), &cfg).unwrap(), 1);
        assert_eq!(chi_exact(&ExplicitGraph::new(0), &cfg).unwrap(), 0);
        assert_eq!(alpha_exact(&cycle(7), &cfg).unwrap(), 3);
        assert_eq!(clique_number(&cycle(3), &cfg).unwrap(), 3);
    }

    #[test]
    fn witness_is_proper() {
        // Groetzsch-like: Mycielski of C5 has chi 4, clique 2
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5 {
            edges.push((5 + i, (i + 1) % 5));
            edges.push((5 + i, (i + 4) % 5));
            edges.push((5 + i, 10));
        }
        let g = ExplicitGraph::from_edges(11, edges).unwrap();
        let (k, w) = chi_exact_with_witness(&g, &ExactConfig::default()).unwrap();
        assert_eq!(k, 4);
        assert!(g.is_proper(&w));
        assert_eq!(clique_number(&g, &ExactConfig::default()).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let g = ExplicitGraph::new(41);
        assert!(matches!(
            chi_exact(&g, &ExactConfig::default()),
            Err(SolverError::CapExceeded { vertices: 41, cap: 40 })
        ));
        assert!(alpha_exact(&g, &ExactConfig::default()).is_err());
        assert_eq!(chi_exact(&g, &ExactConfig::with_cap(41)).unwrap(), 1);
    }
}
