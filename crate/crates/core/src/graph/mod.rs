//! Implicit generalized Kneser graphs `G(n, r, s)`.
//!
//! Vertices are the `r`-subsets of `[n] = {1, ..., n}`; in exact mode two of
//! them are adjacent when they meet in exactly `s` elements, in at-least mode
//! when they meet in `s` or more. No edge list is ever materialized: vertices
//! are addressed by their lexicographic rank and neighbors are generated on
//! demand.

mod coloring;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::subsets::{binom, for_each_sub, BinomTable, Combinations};

pub(crate) use coloring::parse_header;
pub use coloring::{Coloring, ColoringMeta, ParseError};
pub use verify::{induced_degrees, verify_by_edges, verify_coloring, VerificationReport, MAX_REPORTED_VIOLATIONS};

/// Largest ground set supported by the implicit model.
pub const MAX_GROUND_SET: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid parameters n={n} r={r} s={s}: need 0 <= s < r <= n")]
    InvalidParameters { n: u32, r: u32, s: u32 },
    #[error("ground set {0} exceeds the supported maximum {MAX_GROUND_SET}")]
    GroundSetTooLarge(u32),
    #[error("vertex {vertex} is not an {r}-subset of [{n}]")]
    InvalidVertex { vertex: String, n: u32, r: u32 },
    #[error("rank {0} is out of range")]
    RankOutOfRange(u64),
    #[error("coloring is for {found}, expected {expected}")]
    GraphMismatch { expected: String, found: String },
}

/// Which intersection sizes count as edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdjacencyMode {
    /// `|u ∩ v| = s`
    Exact,
    /// `|u ∩ v| >= s`
    #[serde(rename = "atleast")]
    AtLeast,
}

impl AdjacencyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AdjacencyMode::Exact => "exact",
            AdjacencyMode::AtLeast => "atleast",
        }
    }
}

impl FromStr for AdjacencyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(AdjacencyMode::Exact),
            "atleast" | "at-least" => Ok(AdjacencyMode::AtLeast),
            other => Err(format!("unknown adjacency mode `{other}`")),
        }
    }
}

/// A sorted `r`-subset of `[n]` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    /// Sorts and deduplicates nothing: the input must already be strictly
    /// increasing and positive.
    pub fn new(elements: Vec<u32>) -> Option<Self> {
        let ok = elements.first().is_none_or(|&e| e >= 1) && elements.windows(2).all(|w| w[0] < w[1]);
        ok.then_some(Self(elements))
    }

    /// Sorts the input; rejects duplicates and zero.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Option<Self> {
        elements.sort_unstable();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn intersection_size(&self, other: &VertexSet) -> usize {
        sorted_intersection(&self.0, &other.0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.intersection_size(other) == self.len()
    }

    pub(crate) fn to_zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|&e| e as usize - 1).collect()
    }

    pub(crate) fn from_zero_based(idx: &[usize]) -> Self {
        Self(idx.iter().map(|&i| i as u32 + 1).collect())
    }
}

pub(crate) fn sorted_intersection<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for VertexSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let elems = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad element `{t}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        VertexSet::new(elems).ok_or_else(|| format!("`{s}` is not a strictly increasing positive set"))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The descriptor of `G(n, r, s)` or `G(n, r, >=s)`.
#[derive(Clone)]
pub struct KneserGraph {
    n: u32,
    r: u32,
    s: u32,
    mode: AdjacencyMode,
    binom: Arc<BinomTable>,
}

impl PartialEq for KneserGraph {
    fn eq(&self, o: &Self) -> bool {
        (self.n, self.r, self.s, self.mode) == (o.n, o.r, o.s, o.mode)
    }
}

impl Eq for KneserGraph {}

impl fmt::Debug for KneserGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KneserGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.mode {
            AdjacencyMode::Exact => "",
            AdjacencyMode::AtLeast => ">=",
        };
        write!(f, "G({}, {}, {}{})", self.n, self.r, op, self.s)
    }
}

impl KneserGraph {
    pub fn new(n: u32, r: u32, s: u32, mode: AdjacencyMode) -> Result<Self, GraphError> {
        if !(s < r && r <= n) {
            return Err(GraphError::InvalidParameters { n, r, s });
        }
        if n > MAX_GROUND_SET {
            return Err(GraphError::GroundSetTooLarge(n));
        }
        Ok(Self {
            n,
            r,
            s,
            mode,
            binom: Arc::new(BinomTable::new(n as usize + 1, r as usize + 1)),
        })
    }

    /// Exact-intersection graph `G(n, r, s)`.
    pub fn exact(n: u32, r: u32, s: u32) -> Result<Self, GraphError> {
        Self::new(n, r, s, AdjacencyMode::Exact)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn mode(&self) -> AdjacencyMode {
        self.mode
    }

    pub(crate) fn binom(&self) -> &BinomTable {
        &self.binom
    }

    pub fn vertex_count(&self) -> u64 {
        binom(self.n as u64, self.r as u64)
    }

    /// Does an intersection of this size make an edge?
    #[inline]
    pub fn is_edge_intersection(&self, k: usize) -> bool {
        let s = self.s as usize;
        match self.mode {
            AdjacencyMode::Exact => k == s,
            AdjacencyMode::AtLeast => k >= s && k < self.r as usize,
        }
    }

    pub fn check_vertex(&self, v: &VertexSet) -> Result<(), GraphError> {
        let ok = v.len() == self.r as usize && v.elements().last().is_none_or(|&e| e <= self.n);
        if ok {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v.to_string(),
                n: self.n,
                r: self.r,
            })
        }
    }

    /// Adjacency; a vertex is never adjacent to itself.
    pub fn adjacent(&self, u: &VertexSet, v: &VertexSet) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u != v && self.is_edge_intersection(u.intersection_size(v)))
    }

    /// Closed-form degree; every vertex has the same one.
    pub fn degree(&self, v: &VertexSet) -> Result<u64, GraphError> {
        self.check_vertex(v)?;
        Ok(self.regular_degree())
    }

    /// `C(r, s) * C(n - r, r - s)` in exact mode, summed over `k >= s` in at-least mode.
    pub fn regular_degree(&self) -> u64 {
        let (n, r, s) = (self.n as u64, self.r as u64, self.s as u64);
        let term = |k: u64| binom(r, k) * binom(n - r, r - k);
        match self.mode {
            AdjacencyMode::Exact => term(s),
            AdjacencyMode::AtLeast => (s..r).map(term).sum(),
        }
    }

    pub fn rank(&self, v: &VertexSet) -> Result<u64, GraphError> {
        self.check_vertex(v)?;
        Ok(self.rank_zero_based(&v.to_zero_based()))
    }

    #[inline]
    pub(crate) fn rank_zero_based(&self, idx: &[usize]) -> u64 {
        self.binom.lex_rank(self.n as usize, idx)
    }

    pub fn unrank(&self, rank: u64) -> Result<VertexSet, GraphError> {
        if rank >= self.vertex_count() {
            return Err(GraphError::RankOutOfRange(rank));
        }
        let mut buf = Vec::with_capacity(self.r as usize);
        self.unrank_zero_based(rank, &mut buf);
        Ok(VertexSet::from_zero_based(&buf))
    }

    #[inline]
    pub(crate) fn unrank_zero_based(&self, rank: u64, out: &mut Vec<usize>) {
        self.binom.lex_unrank(self.n as usize, self.r as usize, rank, out);
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexSet> + '_ {
        Combinations::new(self.n as usize, self.r as usize).map(|c| VertexSet::from_zero_based(&c))
    }

    /// Calls `f` with the rank of every neighbor of the vertex given by its
    /// 0-based sorted elements.
    pub(crate) fn for_each_neighbor_zero_based(&self, x: &[usize], f: &mut impl FnMut(u64)) {
        let n = self.n as usize;
        let r = self.r as usize;
        let s = self.s as usize;
        let ks: Vec<usize> = match self.mode {
            AdjacencyMode::Exact => vec![s],
            AdjacencyMode::AtLeast => (s..r).collect(),
        };
        let outside: Vec<usize> = (0..n).filter(|e| x.binary_search(e).is_err()).collect();
        let mut kept_buf = Vec::new();
        let mut added_buf = Vec::new();
        let mut y = Vec::with_capacity(r);
        for k in ks {
            for_each_sub(x, k, &mut kept_buf, &mut |kept| {
                let kept = kept.to_vec();
                for_each_sub(&outside, r - k, &mut added_buf, &mut |added| {
                    y.clear();
                    y.extend_from_slice(&kept);
                    y.extend_from_slice(added);
                    y.sort_unstable();
                    f(self.rank_zero_based(&y));
                });
            });
        }
    }

    /// Neighbors of `v` as vertex sets.
    pub fn neighbors(&self, v: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
        self.check_vertex(v)?;
        let mut out = Vec::new();
        self.for_each_neighbor_zero_based(&v.to_zero_based(), &mut |rk| {
            out.push(self.unrank(rk).expect("neighbor rank in range"));
        });
        Ok(out)
    }

    /// The subgraph induced on the vertices satisfying `keep`.
    pub fn induced_subgraph(&self, keep: impl Fn(&VertexSet) -> bool) -> InducedSubgraph {
        let vertices: Vec<VertexSet> = self.vertices().filter(|v| keep(v)).collect();
        InducedSubgraph {
            graph: self.clone(),
            vertices,
        }
    }
}

/// Vertices of a `KneserGraph` passing a predicate, with the induced edges
/// available as a stream.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    graph: KneserGraph,
    vertices: Vec<VertexSet>,
}

impl InducedSubgraph {
    pub fn graph(&self) -> &KneserGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    /// Induced edges as index pairs `(i, j)`, `i < j`, into [`Self::vertices`].
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let vs = &self.vertices;
        (0..vs.len()).flat_map(move |i| {
            (i + 1..vs.len())
                .filter(move |&j| self.graph.is_edge_intersection(vs[i].intersection_size(&vs[j])))
                .map(move |j| (i, j))
        })
    }
}
