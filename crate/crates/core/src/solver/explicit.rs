use super::SolverError;
use crate::graph::{InducedSubgraph, KneserGraph};

/// Vertices materialized in an explicit graph built from a `KneserGraph`
/// are capped here; the exact solvers have their own, much smaller cap.
pub const MAX_EXPLICIT_VERTICES: usize = 20_000;

/// A small graph with bitset adjacency rows. Vertices are `0..n`, each
/// carrying an opaque id (for Kneser-derived graphs, the lexicographic rank).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    ids: Vec<u64>,
    words: usize,
    adj: Vec<u64>,
}

impl ExplicitGraph {
    pub fn new(n: usize) -> Self {
        Self::with_ids((0..n as u64).collect())
    }

    pub fn with_ids(ids: Vec<u64>) -> Self {
        let words = ids.len().div_ceil(64);
        Self {
            adj: vec![0; ids.len() * words],
            ids,
            words,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, SolverError> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
                g.set(v, u);
            }
        }
        g
    }

    /// Materializes a whole Kneser graph; ids are vertex ranks.
    pub fn from_kneser(g: &KneserGraph) -> Result<Self, SolverError> {
        let n = g.vertex_count();
        if n > MAX_EXPLICIT_VERTICES as u64 {
            return Err(SolverError::TooLarge {
                vertices: n,
                cap: MAX_EXPLICIT_VERTICES,
            });
        }
        let mut out = Self::new(n as usize);
        let mut buf = Vec::new();
        for u in 0..n {
            g.unrank_zero_based(u, &mut buf);
            g.for_each_neighbor_zero_based(&buf, &mut |v| out.set(u as usize, v as usize));
        }
        Ok(out)
    }

    /// Materializes an induced subgraph; ids are ranks in the parent graph.
    pub fn from_induced(sub: &InducedSubgraph) -> Result<Self, SolverError> {
        let vs = sub.vertices();
        if vs.len() > MAX_EXPLICIT_VERTICES {
            return Err(SolverError::TooLarge {
                vertices: vs.len() as u64,
                cap: MAX_EXPLICIT_VERTICES,
            });
        }
        let ids = vs.iter().map(|v| sub.graph().rank(v).expect("valid vertex")).collect();
        let mut out = Self::with_ids(ids);
        for (i, j) in sub.edges() {
            out.set(i, j);
            out.set(j, i);
        }
        Ok(out)
    }

    /// Subgraph on the vertices `keep` (in that order), ids preserved.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut out = Self::with_ids(keep.iter().map(|&v| self.ids[v]).collect());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    out.set(a, b);
                    out.set(b, a);
                }
            }
        }
        out
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), SolverError> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(SolverError::VertexOutOfRange(u.max(v)));
        }
        if u == v {
            return Err(SolverError::SelfLoop(u));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as 64-bit words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let n = self.vertex_count();
        let mut out = Self::with_ids(self.ids.clone());
        for u in 0..n {
            for v in 0..n {
                if u != v && !self.has_edge(u, v) {
                    out.set(u, v);
                }
            }
        }
        out
    }

    /// True iff no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// True iff `colors` (indexed by vertex) has no monochromatic edge.
    pub fn is_proper(&self, colors: &[u32]) -> bool {
        (0..self.vertex_count()).all(|u| self.neighbors(u).all(|v| colors[u] != colors[v]))
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}
