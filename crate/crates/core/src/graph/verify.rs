use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{Coloring, GraphError, KneserGraph, VertexSet};
use crate::subsets::{binom, for_each_sub};

/// Violating pairs listed in a report are truncated to this many.
pub const MAX_REPORTED_VIOLATIONS: usize = 100;

/// Outcome of checking a coloring for monochromatic edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub proper: bool,
    pub num_colors: usize,
    pub num_vertices: u64,
    pub violations: Vec<(VertexSet, VertexSet)>,
    /// Total number of monochromatic edges (not truncated).
    pub violation_count: u64,
    pub max_class_size: usize,
    /// class size -> number of classes of that size
    pub class_size_histogram: BTreeMap<usize, usize>,
}

fn check_graph(g: &KneserGraph, c: &Coloring) -> Result<(), GraphError> {
    if g != c.graph() {
        return Err(GraphError::GraphMismatch {
            expected: g.to_string(),
            found: c.graph().to_string(),
        });
    }
    Ok(())
}

fn histogram(c: &Coloring) -> (BTreeMap<usize, usize>, usize) {
    let mut sizes = vec![0usize; c.num_colors()];
    for &col in c.colors() {
        sizes[col as usize] += 1;
    }
    let mut hist = BTreeMap::new();
    for &s in &sizes {
        *hist.entry(s).or_insert(0) += 1;
    }
    (hist, sizes.into_iter().max().unwrap_or(0))
}

/// Checks every color class for internal edges.
///
/// Within a class `S`, the number of members meeting `X` in exactly `k`
/// elements follows by inclusion-exclusion from the counts `N_T` of members
/// containing each subset `T` of `X`, so each member costs `2^r` lookups
/// instead of a pass over the class. Members with a positive count are then
/// matched pairwise to list explicit violations.
pub fn verify_coloring(g: &KneserGraph, c: &Coloring) -> Result<VerificationReport, GraphError> {
    check_graph(g, c)?;
    let (class_size_histogram, max_class_size) = histogram(c);
    let classes = c.classes();

    let per_class: Vec<(u64, Vec<(u64, u64)>)> = classes.par_iter().map(|members| check_class(g, members)).collect();

    let mut violation_count = 0;
    let mut pairs = Vec::new();
    for (count, found) in per_class {
        violation_count += count;
        for p in found {
            if pairs.len() < MAX_REPORTED_VIOLATIONS {
                pairs.push(p);
            }
        }
    }
    Ok(report(
        g,
        c,
        violation_count,
        pairs,
        class_size_histogram,
        max_class_size,
    ))
}

fn report(
    g: &KneserGraph,
    c: &Coloring,
    violation_count: u64,
    mut pairs: Vec<(u64, u64)>,
    class_size_histogram: BTreeMap<usize, usize>,
    max_class_size: usize,
) -> VerificationReport {
    pairs.sort_unstable();
    pairs.truncate(MAX_REPORTED_VIOLATIONS);
    let violations = pairs
        .into_iter()
        .map(|(a, b)| (g.unrank(a).expect("rank"), g.unrank(b).expect("rank")))
        .collect();
    VerificationReport {
        proper: violation_count == 0,
        num_colors: c.num_colors(),
        num_vertices: g.vertex_count(),
        violations,
        violation_count,
        max_class_size,
        class_size_histogram,
    }
}

/// Degree of every member inside the induced subgraph on `members`,
/// computed by subset counting.
pub fn induced_degrees(g: &KneserGraph, members: &[u64]) -> Vec<u64> {
    class_degrees(g, members).1
}

fn class_degrees(g: &KneserGraph, members: &[u64]) -> (Vec<usize>, Vec<u64>) {
    let r = g.r() as usize;
    let s = g.s() as usize;
    let bt = g.binom();
    let mut sets: Vec<usize> = Vec::with_capacity(members.len() * r);
    let mut buf = Vec::with_capacity(r);
    for &m in members {
        g.unrank_zero_based(m, &mut buf);
        sets.extend_from_slice(&buf);
    }

    // counts[j] maps the colex rank of a j-subset to the members containing it
    let mut counts: Vec<HashMap<u64, i64>> = vec![HashMap::new(); r];
    let mut sub = Vec::with_capacity(r);
    for x in sets.chunks_exact(r) {
        for (j, map) in counts.iter_mut().enumerate().skip(s.max(1)) {
            for_each_sub(x, j, &mut sub, &mut |t| {
                *map.entry(bt.colex_rank(t)).or_insert(0) += 1;
            });
        }
    }

    // weight[j] = sum over edge sizes k <= j of (-1)^(j-k) C(j,k)
    let weight: Vec<i64> = (0..=r)
        .map(|j| {
            (0..=j)
                .filter(|&k| g.is_edge_intersection(k))
                .map(|k| {
                    let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                    sign * binom(j as u64, k as u64) as i64
                })
                .sum()
        })
        .collect();

    let size = members.len() as i64;
    let degs = sets
        .chunks_exact(r)
        .map(|x| {
            let mut deg = 0i64;
            for j in s..=r {
                if weight[j] == 0 {
                    continue;
                }
                let sum = if j == 0 {
                    size
                } else if j == r {
                    1
                } else {
                    let mut acc = 0;
                    for_each_sub(x, j, &mut sub, &mut |t| {
                        acc += counts[j].get(&bt.colex_rank(t)).copied().unwrap_or(0);
                    });
                    acc
                };
                deg += weight[j] * sum;
            }
            debug_assert!(deg >= 0);
            deg as u64
        })
        .collect();
    (sets, degs)
}

/// Returns the number of internal edges of one class and up to
/// `MAX_REPORTED_VIOLATIONS` of them as rank pairs.
fn check_class(g: &KneserGraph, members: &[u64]) -> (u64, Vec<(u64, u64)>) {
    if members.len() < 2 {
        return (0, Vec::new());
    }
    let r = g.r() as usize;
    let (sets, degs) = class_degrees(g, members);
    let total: u64 = degs.iter().sum();
    let bad: Vec<usize> = (0..degs.len()).filter(|&i| degs[i] > 0).collect();

    let mut pairs = Vec::new();
    'outer: for (a, &i) in bad.iter().enumerate() {
        let xi = &sets[i * r..(i + 1) * r];
        for &j in &bad[a + 1..] {
            let xj = &sets[j * r..(j + 1) * r];
            if g.is_edge_intersection(super::sorted_intersection(xi, xj)) {
                let (u, v) = (members[i], members[j]);
                pairs.push((u.min(v), u.max(v)));
                if pairs.len() >= MAX_REPORTED_VIOLATIONS {
                    break 'outer;
                }
            }
        }
    }
    (total / 2, pairs)
}

/// Independent check that enumerates every edge once.
pub fn verify_by_edges(g: &KneserGraph, c: &Coloring) -> Result<VerificationReport, GraphError> {
    check_graph(g, c)?;
    let (class_size_histogram, max_class_size) = histogram(c);
    let colors = c.colors();
    let total = g.vertex_count();
    let chunk = 4096u64;
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let per_chunk: Vec<(u64, Vec<(u64, u64)>)> = starts
        .par_iter()
        .map(|&lo| {
            let mut buf = Vec::new();
            let mut count = 0u64;
            let mut found = Vec::new();
            for u in lo..(lo + chunk).min(total) {
                g.unrank_zero_based(u, &mut buf);
                let cu = colors[u as usize];
                g.for_each_neighbor_zero_based(&buf, &mut |v| {
                    if v > u && colors[v as usize] == cu {
                        count += 1;
                        if found.len() < MAX_REPORTED_VIOLATIONS {
                            found.push((u, v));
                        }
                    }
                });
            }
            (count, found)
        })
        .collect();
    let mut violation_count = 0;
    let mut pairs = Vec::new();
    for (count, found) in per_chunk {
        violation_count += count;
        pairs.extend(found);
    }
    Ok(report(
        g,
        c,
        violation_count,
        pairs,
        class_size_histogram,
        max_class_size,
    ))
}
