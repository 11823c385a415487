//! Random list coloring of `G(n, r, s)`: send every color of the universe to
//! a uniformly random `(s+1)`-subset of `[n]` and give each vertex a list
//! color whose image it contains. Vertices sharing a color then share an
//! `(s+1)`-set, so they meet in more than `s` elements.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use rand::seq::index::sample;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Coloring, ColoringMeta, KneserGraph, VertexSet};
use crate::rng;

/// Per-vertex allowed colors, indexed by vertex rank. Lists are kept sorted
/// and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
}

#[derive(Debug, Error)]
pub enum ListError {
    #[error("expected one list per vertex ({expected}), got {found}")]
    WrongLength { expected: u64, found: usize },
    #[error("list of vertex {vertex} has {size} colors, fewer than the required {m}")]
    Undersized { vertex: VertexSet, size: usize, m: usize },
    #[error("no success in {retries} attempts; the last left {uncovered} vertices uncovered")]
    RetriesExhausted { retries: u32, uncovered: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl ListAssignment {
    pub fn new(g: &KneserGraph, mut lists: Vec<Vec<u32>>) -> Result<Self, ListError> {
        if lists.len() as u64 != g.vertex_count() {
            return Err(ListError::WrongLength {
                expected: g.vertex_count(),
                found: lists.len(),
            });
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Self { lists })
    }

    /// Every vertex gets `0..m`.
    pub fn uniform(g: &KneserGraph, m: usize) -> Self {
        Self {
            lists: vec![(0..m as u32).collect(); g.vertex_count() as usize],
        }
    }

    pub fn list(&self, rank: u64) -> &[u32] {
        &self.lists[rank as usize]
    }

    pub fn min_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sorted union of all lists.
    pub fn universe(&self) -> Vec<u32> {
        let mut u: Vec<u32> = self.lists.iter().flatten().copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }

    /// Reads `vertex<TAB>c1,c2,...` lines; every vertex must appear once.
    pub fn read_from(g: &KneserGraph, input: impl BufRead) -> Result<Self, ListError> {
        let mut lists: Vec<Option<Vec<u32>>> = vec![None; g.vertex_count() as usize];
        for (idx, line) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| ListError::Parse { line: line_no, msg };
            let (v, cs) = line
                .split_once('\t')
                .ok_or_else(|| err("expected `vertex<TAB>colors`".into()))?;
            let v: VertexSet = v.parse().map_err(err)?;
            let rank = g.rank(&v).map_err(|e| err(e.to_string()))? as usize;
            let colors = cs
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u32>()
                        .map_err(|e| err(format!("bad color `{c}`: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if lists[rank].replace(colors).is_some() {
                return Err(err(format!("vertex {v} listed twice")));
            }
        }
        if let Some(missing) = lists.iter().position(Option::is_none) {
            return Err(ListError::Parse {
                line: 0,
                msg: format!("no list for vertex {}", g.unrank(missing as u64).expect("rank")),
            });
        }
        Self::new(g, lists.into_iter().map(Option::unwrap).collect())
    }

    pub fn write_to(&self, g: &KneserGraph, mut out: impl Write) -> io::Result<()> {
        for (v, l) in g.vertices().zip(&self.lists) {
            let cs: Vec<String> = l.iter().map(u32::to_string).collect();
            writeln!(out, "{v}\t{}", cs.join(","))?;
        }
        Ok(())
    }
}

/// `⌈r · n^(s+1) · ln n⌉`.
pub fn list_size_bound(n: u32, r: u32, s: u32) -> usize {
    let n = n as f64;
    (r as f64 * n.powi(s as i32 + 1) * n.ln()).ceil() as usize
}

/// A successful random list coloring.
#[derive(Clone, Debug)]
pub struct ListColoring {
    /// Dense renumbering of the chosen list colors.
    pub coloring: Coloring,
    /// The list color picked for each vertex, by rank.
    pub chosen: Vec<u32>,
    /// Image of every used list color (0-based elements).
    pub phi: BTreeMap<u32, Vec<usize>>,
    /// Seed of the successful attempt.
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub enum ListAttempt {
    Colored(ListColoring),
    Failed { uncovered: Vec<VertexSet> },
}

fn check_sizes(g: &KneserGraph, lists: &ListAssignment, m: usize) -> Result<(), ListError> {
    if lists.lists.len() as u64 != g.vertex_count() {
        return Err(ListError::WrongLength {
            expected: g.vertex_count(),
            found: lists.lists.len(),
        });
    }
    if let Some(rank) = lists.lists.iter().position(|l| l.len() < m) {
        return Err(ListError::Undersized {
            vertex: g.unrank(rank as u64).expect("rank"),
            size: lists.lists[rank].len(),
            m,
        });
    }
    Ok(())
}

/// One sampling attempt. Lists shorter than `m` are rejected up front.
pub fn probabilistic_list_coloring(
    g: &KneserGraph,
    lists: &ListAssignment,
    m: usize,
    seed: u64,
) -> Result<ListAttempt, ListError> {
    check_sizes(g, lists, m)?;
    Ok(attempt(g, lists, seed))
}

fn attempt(g: &KneserGraph, lists: &ListAssignment, seed: u64) -> ListAttempt {
    let n = g.n() as usize;
    let k = g.s() as usize + 1;
    let mut rng = rng::stream(seed, 0);
    let universe = lists.universe();
    let mut phi_all: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for &c in &universe {
        let mut img = sample(&mut rng, n, k).into_vec();
        img.sort_unstable();
        phi_all.insert(c, img);
    }

    let mut chosen = Vec::with_capacity(lists.lists.len());
    let mut uncovered = Vec::new();
    let mut buf = Vec::new();
    for (rank, list) in lists.lists.iter().enumerate() {
        g.unrank_zero_based(rank as u64, &mut buf);
        let hit = list
            .iter()
            .copied()
            .find(|c| phi_all[c].iter().all(|e| buf.binary_search(e).is_ok()));
        match hit {
            Some(c) => chosen.push(c),
            None => {
                uncovered.push(VertexSet::from_zero_based(&buf));
                chosen.push(u32::MAX);
            }
        }
    }
    if !uncovered.is_empty() {
        return ListAttempt::Failed { uncovered };
    }
    let used: std::collections::BTreeSet<u32> = chosen.iter().copied().collect();
    let phi = phi_all.into_iter().filter(|(c, _)| used.contains(c)).collect();
    let meta = ColoringMeta::new("list", seed);
    let coloring = Coloring::compacted(g.clone(), chosen.clone(), meta).expect("total coloring");
    ListAttempt::Colored(ListColoring {
        coloring,
        chosen,
        phi,
        seed,
    })
}

/// Up to `retries` attempts with seeds derived from `master_seed`. The
/// attempts may run concurrently; the lowest successful index wins, so the
/// outcome does not depend on scheduling. Returns the coloring and the
/// index of the successful attempt.
pub fn list_coloring_with_retries(
    g: &KneserGraph,
    lists: &ListAssignment,
    m: usize,
    master_seed: u64,
    retries: u32,
) -> Result<(ListColoring, u32), ListError> {
    check_sizes(g, lists, m)?;
    let outcomes: Vec<ListAttempt> = (0..retries)
        .into_par_iter()
        .map(|i| attempt(g, lists, rng::derive_seed(master_seed, i as u64)))
        .collect();
    let mut last_uncovered = 0;
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            ListAttempt::Colored(c) => return Ok((c, i as u32)),
            ListAttempt::Failed { uncovered } => last_uncovered = uncovered.len(),
        }
    }
    Err(ListError::RetriesExhausted {
        retries,
        uncovered: last_uncovered,
    })
}
