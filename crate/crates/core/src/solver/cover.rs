//! Coloring a graph part by part along a cover `V = A_1 ∪ ... ∪ A_m`.
//!
//! If every part is `l`-list-colorable and every vertex has at most `d`
//! neighbors in the parts not containing it, coloring the parts in order
//! from a palette of `l + d` colors always succeeds: when part `i` is
//! reached, each of its new vertices has lost at most `d` colors to
//! earlier parts.

use thiserror::Error;

use super::explicit::ExplicitGraph;
use super::greedy::{ColorTracker, UNCOLORED};
use crate::graph::KneserGraph;

/// An ordered cover of a vertex set by parts, with the two budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSystem {
    pub parts: Vec<Vec<u64>>,
    /// bound on the number of neighbors outside the parts containing a vertex
    pub d: usize,
    /// list-chromatic budget of every part
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("vertex {vertex} is in no part of the cover")]
    Uncovered { vertex: u64 },
    #[error("vertex {vertex} has {degree} external neighbors, above the bound d={d}")]
    ExternalDegree { vertex: u64, degree: usize, d: usize },
    #[error("part {part}: the list oracle failed")]
    OracleFailed { part: usize },
    #[error("part {part}: palette of {palette} colors exhausted at vertex {vertex}")]
    PaletteExhausted { part: usize, vertex: u64, palette: usize },
    #[error("part {part}: oracle returned an improper or off-list coloring")]
    BadOracleOutput { part: usize },
}

impl CoverSystem {
    pub fn new(parts: Vec<Vec<u64>>, l: usize, d: usize) -> Self {
        Self { parts, d, l }
    }

    pub fn palette(&self) -> usize {
        self.l + self.d
    }

    /// Checks that the parts cover `0..n` (for explicit graphs).
    pub fn check_covers(&self, n: usize) -> Result<(), CoverError> {
        let mut seen = vec![false; n];
        for part in &self.parts {
            for &v in part {
                if let Some(s) = seen.get_mut(v as usize) {
                    *s = true;
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(CoverError::Uncovered { vertex: v as u64 }),
            None => Ok(()),
        }
    }
}

/// For each vertex, the number of its neighbors lying in some part that
/// does not contain it.
pub fn external_degrees(g: &ExplicitGraph, cover: &CoverSystem) -> Vec<usize> {
    let n = g.vertex_count();
    let parts_of: Vec<Vec<usize>> = {
        let mut p = vec![Vec::new(); n];
        for (i, part) in cover.parts.iter().enumerate() {
            for &v in part {
                p[v as usize].push(i);
            }
        }
        p
    };
    let mut out = vec![0; n];
    for v in 0..n {
        out[v] = g
            .neighbors(v)
            .filter(|&w| parts_of[w].iter().any(|pw| !parts_of[v].contains(pw)))
            .count();
    }
    out
}

/// Colors the vertices `part` of `g` from per-vertex lists.
pub trait ListColoringOracle {
    /// `lists[i]` belongs to `part[i]`. Returns one color per vertex of
    /// `part`, or `None` on failure.
    fn color_part(&self, g: &ExplicitGraph, part: &[usize], lists: &[Vec<u32>]) -> Option<Vec<u32>>;
}

/// First-fit in part order: each vertex takes the least list color not
/// used by an earlier vertex of the part. Succeeds whenever every list is
/// longer than the maximum degree of the part.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyListOracle;

impl ListColoringOracle for GreedyListOracle {
    fn color_part(&self, g: &ExplicitGraph, part: &[usize], lists: &[Vec<u32>]) -> Option<Vec<u32>> {
        let mut out: Vec<u32> = Vec::with_capacity(part.len());
        for (i, &v) in part.iter().enumerate() {
            let c = lists[i]
                .iter()
                .copied()
                .find(|&c| !(0..i).any(|k| out[k] == c && g.has_edge(v, part[k])))?;
            out.push(c);
        }
        Some(out)
    }
}

/// Colors `g` along `cover` with the palette `0..l+d`, materializing each
/// list and handing whole parts to `oracle`. Verifies the external-degree
/// bound first.
pub fn cover_combine(
    g: &ExplicitGraph,
    cover: &CoverSystem,
    oracle: &dyn ListColoringOracle,
) -> Result<Vec<u32>, CoverError> {
    let n = g.vertex_count();
    cover.check_covers(n)?;
    for (v, &deg) in external_degrees(g, cover).iter().enumerate() {
        if deg > cover.d {
            return Err(CoverError::ExternalDegree {
                vertex: v as u64,
                degree: deg,
                d: cover.d,
            });
        }
    }
    let palette = cover.palette() as u32;
    let mut colors = vec![UNCOLORED; n];
    for (pi, part) in cover.parts.iter().enumerate() {
        let fresh: Vec<usize> = part
            .iter()
            .map(|&v| v as usize)
            .filter(|&v| colors[v] == UNCOLORED)
            .collect();
        if fresh.is_empty() {
            continue;
        }
        let lists: Vec<Vec<u32>> = fresh
            .iter()
            .map(|&v| {
                let mut taken = vec![false; palette as usize];
                for w in g.neighbors(v) {
                    if colors[w] != UNCOLORED {
                        taken[colors[w] as usize] = true;
                    }
                }
                (0..palette).filter(|&c| !taken[c as usize]).collect()
            })
            .collect();
        let got = oracle
            .color_part(g, &fresh, &lists)
            .ok_or(CoverError::OracleFailed { part: pi })?;
        let ok = got.len() == fresh.len()
            && got.iter().zip(&lists).all(|(c, l)| l.contains(c))
            && (0..fresh.len())
                .all(|a| (a + 1..fresh.len()).all(|b| got[a] != got[b] || !g.has_edge(fresh[a], fresh[b])));
        if !ok {
            return Err(CoverError::BadOracleOutput { part: pi });
        }
        for (&v, &c) in fresh.iter().zip(&got) {
            colors[v] = c;
        }
    }
    Ok(colors)
}

/// Streaming form of [`cover_combine`] with the first-fit oracle, for
/// implicit Kneser graphs. Part members are vertex ranks; `colors` is
/// indexed by rank and is extended in place. Neighbors colored outside
/// the tracker (for example from a disjoint palette) are invisible to it.
///
/// Returns the number of palette colors used. The external-degree bound is
/// not re-measured here; instead every chosen color is checked against the
/// palette `0..l+d`.
pub fn cover_combine_kneser(
    g: &KneserGraph,
    cover: &CoverSystem,
    colors: &mut [u32],
    tracker: &mut impl ColorTracker,
) -> Result<u32, CoverError> {
    let palette = cover.palette();
    let mut buf = Vec::with_capacity(g.r() as usize);
    let mut used = 0;
    for (pi, part) in cover.parts.iter().enumerate() {
        for &rank in part {
            if colors[rank as usize] != UNCOLORED {
                continue;
            }
            g.unrank_zero_based(rank, &mut buf);
            let c = tracker.first_free(&buf);
            if c as usize >= palette {
                return Err(CoverError::PaletteExhausted {
                    part: pi,
                    vertex: rank,
                    palette,
                });
            }
            tracker.assign(&buf, c);
            colors[rank as usize] = c;
            used = used.max(c + 1);
        }
    }
    Ok(used)
}
