//! Greedy coloring of Kneser graphs and of explicit graphs.
//!
//! For Kneser graphs the inner question "which colors do the already
//! colored neighbors of `X` use" is answered by a [`ColorTracker`]. The
//! [`ScanTracker`] enumerates all neighbors; the [`KneserTracker`] keeps,
//! for every small subset `T`, how many colored vertices of each color
//! contain `T`, and recovers exact-intersection counts by
//! inclusion-exclusion over the subsets of `X`.

use super::explicit::ExplicitGraph;
use super::SolverError;
use crate::graph::{AdjacencyMode, Coloring, ColoringMeta, KneserGraph};
use crate::subsets::{binom, for_each_sub, BinomTable};

pub const UNCOLORED: u32 = u32::MAX;

/// Answers first-fit queries against a growing partial coloring of a
/// Kneser graph. Vertices are passed as sorted 0-based element slices.
pub trait ColorTracker {
    /// Least color used by no colored neighbor of `x`.
    fn first_free(&mut self, x: &[usize]) -> u32;
    /// Records that `x` now has color `c`. Each vertex is assigned once.
    fn assign(&mut self, x: &[usize], c: u32);
}

/// Tracker that scans the full neighborhood of every queried vertex.
pub struct ScanTracker {
    graph: KneserGraph,
    colors: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl ScanTracker {
    pub fn new(graph: &KneserGraph) -> Self {
        Self {
            colors: vec![UNCOLORED; graph.vertex_count() as usize],
            graph: graph.clone(),
            stamp: Vec::new(),
            epoch: 0,
        }
    }
}

impl ColorTracker for ScanTracker {
    fn first_free(&mut self, x: &[usize]) -> u32 {
        self.epoch += 1;
        let epoch = self.epoch;
        let (colors, stamp) = (&self.colors, &mut self.stamp);
        self.graph.for_each_neighbor_zero_based(x, &mut |v| {
            let c = colors[v as usize];
            if c != UNCOLORED {
                let c = c as usize;
                if stamp.len() <= c {
                    stamp.resize(c + 1, 0);
                }
                stamp[c] = epoch;
            }
        });
        (0..).find(|&c| self.stamp.get(c as usize) != Some(&epoch)).unwrap()
    }

    fn assign(&mut self, x: &[usize], c: u32) {
        let rank = self.graph.rank_zero_based(x) as usize;
        self.colors[rank] = c;
    }
}

/// Largest subset index space a [`KneserTracker`] will allocate densely.
const MAX_TRACKED_SUBSETS: u64 = 1 << 22;

/// Counting tracker; memory is proportional to `C(n, s)` times the number of
/// colors, independent of the number of vertices.
pub struct KneserTracker {
    n: usize,
    r: usize,
    s: usize,
    exact: bool,
    binom: BinomTable,
    /// per s-subset: which colors occur among colored supersets
    bits: Vec<Vec<u64>>,
    /// per s-subset: counts per color (exact mode only)
    counts: Vec<Vec<u32>>,
    /// levels s+1 .. r-1: per subset, (color, count) pairs
    upper: Vec<Vec<Vec<(u32, u32)>>>,
    /// alternating inclusion-exclusion weights (-1)^(j-s) C(j, s), by j
    weights: Vec<i64>,
    or: Vec<u64>,
    /// (color, weighted count) gathered from the upper levels
    cands: Vec<(u32, i64)>,
    sub: Vec<usize>,
}

impl KneserTracker {
    pub fn new(g: &KneserGraph) -> Result<Self, SolverError> {
        let (n, r, s) = (g.n() as usize, g.r() as usize, g.s() as usize);
        let exact = g.mode() == AdjacencyMode::Exact;
        let top = if exact { r } else { s + 1 };
        for j in s..top {
            let size = binom(n as u64, j as u64);
            if size > MAX_TRACKED_SUBSETS {
                return Err(SolverError::TooLarge {
                    vertices: size,
                    cap: MAX_TRACKED_SUBSETS as usize,
                });
            }
        }
        let base = binom(n as u64, s as u64) as usize;
        let upper = (s + 1..top)
            .map(|j| vec![Vec::new(); binom(n as u64, j as u64) as usize])
            .collect();
        let weights = (0..r)
            .map(|j| {
                if j < s {
                    0
                } else {
                    let w = binom(j as u64, s as u64) as i64;
                    if (j - s) % 2 == 0 {
                        w
                    } else {
                        -w
                    }
                }
            })
            .collect();
        Ok(Self {
            n,
            r,
            s,
            exact,
            binom: BinomTable::new(n, r),
            bits: vec![Vec::new(); base],
            counts: if exact { vec![Vec::new(); base] } else { Vec::new() },
            upper,
            weights,
            or: Vec::new(),
            cands: Vec::new(),
            sub: Vec::with_capacity(r),
        })
    }
}

impl ColorTracker for KneserTracker {
    fn first_free(&mut self, x: &[usize]) -> u32 {
        debug_assert_eq!(x.len(), self.r);
        debug_assert!(x.iter().all(|&e| e < self.n));
        self.or.clear();
        {
            let (bits, bt, or) = (&self.bits, &self.binom, &mut self.or);
            for_each_sub(x, self.s, &mut self.sub, &mut |t| {
                let row = &bits[bt.colex_rank(t) as usize];
                if or.len() < row.len() {
                    or.resize(row.len(), 0);
                }
                for (o, w) in or.iter_mut().zip(row) {
                    *o |= w;
                }
            });
        }
        let mex = self
            .or
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i as u32 * 64 + (!w).trailing_zeros())
            .unwrap_or(self.or.len() as u32 * 64);
        if !self.exact || self.s + 1 >= self.r {
            return mex;
        }
        // A color present through an s-subset may still be free if every
        // such vertex meets x in more than s elements; those vertices show
        // up in the upper-level lists. Inclusion-exclusion over the levels
        // counts the colored vertices meeting x in exactly s elements.
        self.cands.clear();
        {
            let (upper, bt, weights, cands) = (&self.upper, &self.binom, &self.weights, &mut self.cands);
            for (lvl, maps) in upper.iter().enumerate() {
                let w = weights[self.s + 1 + lvl];
                for_each_sub(x, self.s + 1 + lvl, &mut self.sub, &mut |t| {
                    for &(c, k) in &maps[bt.colex_rank(t) as usize] {
                        if c < mex {
                            cands.push((c, w * k as i64));
                        }
                    }
                });
            }
        }
        if self.cands.is_empty() {
            return mex;
        }
        self.cands.sort_unstable_by_key(|&(c, _)| c);
        let mut found = mex;
        let mut i = 0;
        while i < self.cands.len() {
            let c = self.cands[i].0;
            let mut total = 0i64;
            while i < self.cands.len() && self.cands[i].0 == c {
                total += self.cands[i].1;
                i += 1;
            }
            let (counts, bt) = (&self.counts, &self.binom);
            let mut base = 0i64;
            for_each_sub(x, self.s, &mut self.sub, &mut |t| {
                base += counts[bt.colex_rank(t) as usize].get(c as usize).copied().unwrap_or(0) as i64;
            });
            if total + self.weights[self.s] * base == 0 {
                found = c;
                break;
            }
        }
        found
    }

    fn assign(&mut self, x: &[usize], c: u32) {
        let ci = c as usize;
        let exact = self.exact;
        {
            let (bits, counts, bt) = (&mut self.bits, &mut self.counts, &self.binom);
            for_each_sub(x, self.s, &mut self.sub, &mut |t| {
                let idx = bt.colex_rank(t) as usize;
                let row = &mut bits[idx];
                if row.len() <= ci / 64 {
                    row.resize(ci / 64 + 1, 0);
                }
                row[ci / 64] |= 1 << (ci % 64);
                if exact {
                    let cnt = &mut counts[idx];
                    if cnt.len() <= ci {
                        cnt.resize(ci + 1, 0);
                    }
                    cnt[ci] += 1;
                }
            });
        }
        for (lvl, j) in (self.s + 1..self.s + 1 + self.upper.len()).enumerate() {
            let (maps, bt) = (&mut self.upper[lvl], &self.binom);
            for_each_sub(x, j, &mut self.sub, &mut |t| {
                let list = &mut maps[bt.colex_rank(t) as usize];
                match list.iter_mut().find(|(col, _)| *col == c) {
                    Some((_, k)) => *k += 1,
                    None => list.push((c, 1)),
                }
            });
        }
    }
}

/// Greedy first-fit over `order` (vertex ranks); writes into `colors`
/// (indexed by rank, [`UNCOLORED`] for untouched vertices). Returns the
/// number of colors used by the vertices in `order`.
pub fn greedy_extend(
    g: &KneserGraph,
    order: impl IntoIterator<Item = u64>,
    colors: &mut [u32],
    tracker: &mut impl ColorTracker,
) -> u32 {
    let mut buf = Vec::with_capacity(g.r() as usize);
    let mut used = 0;
    for rank in order {
        g.unrank_zero_based(rank, &mut buf);
        let c = tracker.first_free(&buf);
        tracker.assign(&buf, c);
        colors[rank as usize] = c;
        used = used.max(c + 1);
    }
    used
}

/// First-fit coloring of the whole graph in lexicographic order. Uses at
/// most `Δ + 1` colors.
pub fn greedy_coloring(g: &KneserGraph) -> Coloring {
    let total = g.vertex_count();
    let mut colors = vec![UNCOLORED; total as usize];
    match KneserTracker::new(g) {
        Ok(mut t) => greedy_extend(g, 0..total, &mut colors, &mut t),
        Err(_) => greedy_extend(g, 0..total, &mut colors, &mut ScanTracker::new(g)),
    };
    Coloring::compacted(g.clone(), colors, ColoringMeta::new("greedy", 0)).expect("total coloring")
}

/// First-fit coloring of an explicit graph in the given vertex order.
pub fn greedy_explicit(g: &ExplicitGraph, order: &[usize]) -> Vec<u32> {
    let n = g.vertex_count();
    let mut colors = vec![UNCOLORED; n];
    let mut taken = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(n + 1, false);
        for w in g.neighbors(v) {
            if colors[w] != UNCOLORED {
                taken[colors[w] as usize] = true;
            }
        }
        colors[v] = taken.iter().position(|&t| !t).unwrap() as u32;
    }
    colors
}
