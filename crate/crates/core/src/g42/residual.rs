//! Classification of the 4-sets and the cover of those whose completion
//! has a collinear pair.
//!
//! A 4-set `X` completes to `A = X ∪ {-sum X}`. It is good when `A` is a
//! colored family member, in `U1` when `A` is not in the family, and in
//! `U2` otherwise. `U1` is covered by `U*` (the completion is zero or
//! collinear with a point of `X`) and by `U(α, β)`, the 4-sets containing
//! a collinear pair `{α, β}`.

use crate::graph::KneserGraph;
use crate::solver::CoverSystem;
use crate::subsets::{binom, BinomTable, Combinations};

use super::family::Family;
use super::plane::Plane;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum VertexClass {
    Good,
    U1,
    U2,
}

/// Per-vertex classification of `G(p^2 - 1, 4, 2)`, by lexicographic rank.
#[derive(Clone, Debug)]
pub struct Classification {
    pub class: Vec<VertexClass>,
    /// Family member containing each vertex, or `u32::MAX`.
    pub completion: Vec<u32>,
}

impl Classification {
    /// `good(i)` tells whether family member `i` keeps its color.
    pub fn new(family: &Family, good: impl Fn(usize) -> bool) -> Self {
        let n = family.n() as usize;
        let total = binom(n as u64, 4) as usize;
        let mut class = Vec::with_capacity(total);
        let mut completion = Vec::with_capacity(total);
        let mut it = Combinations::new(n, 4);
        loop {
            let c = it.current();
            let x = [c[0] as u32 + 1, c[1] as u32 + 1, c[2] as u32 + 1, c[3] as u32 + 1];
            match family.completion(&x) {
                None => {
                    class.push(VertexClass::U1);
                    completion.push(u32::MAX);
                }
                Some(i) => {
                    class.push(if good(i) { VertexClass::Good } else { VertexClass::U2 });
                    completion.push(i as u32);
                }
            }
            if !it.advance() {
                break;
            }
        }
        Self { class, completion }
    }

    pub fn count(&self, c: VertexClass) -> usize {
        self.class.iter().filter(|&&x| x == c).count()
    }

    pub fn ranks(&self, c: VertexClass) -> Vec<u64> {
        (0..self.class.len() as u64)
            .filter(|&r| self.class[r as usize] == c)
            .collect()
    }
}

/// True iff the completion of `x` is zero or collinear with a point of `x`.
pub(crate) fn in_u_star(plane: &Plane, x: &[u32; 4]) -> bool {
    let e = plane.neg_sum(x);
    e == 0 || x.iter().any(|&a| plane.line(a) == plane.line(e))
}

/// Cover of `U1` with its budgets.
#[derive(Clone, Debug)]
pub struct ResidualCover {
    /// `U*` first, then `U(α, β)` for collinear pairs `α < β` in
    /// lexicographic order. Members are vertex ranks.
    pub cover: CoverSystem,
    pub u_star_size: usize,
    pub pair_parts: usize,
    /// Maximum degree inside `U*` and inside one `U(α, β)`.
    pub delta_u_star: u64,
    pub delta_pair: u64,
    /// Whether `cover.d` was measured exactly (otherwise it is the maximum
    /// degree of the whole graph).
    pub d_measured: bool,
}

/// Work limit (neighbor visits) for measuring the external degree exactly.
pub const DEFAULT_D_BUDGET: u64 = 2_000_000_000;

pub fn residual_cover(family: &Family, g: &KneserGraph, cls: &Classification, d_budget: u64) -> ResidualCover {
    let plane = &family.plane;
    let n = family.n() as usize;
    let bt = BinomTable::new(n, 4);
    let rank = |x: &[u32; 4]| bt.lex_rank(n, &x.map(|e| e as usize - 1));

    let mut star = vec![false; cls.class.len()];
    let mut u_star = Vec::new();
    let mut it = Combinations::new(n, 4);
    let mut r = 0usize;
    loop {
        if cls.class[r] == VertexClass::U1 {
            let c = it.current();
            let x = [c[0] as u32 + 1, c[1] as u32 + 1, c[2] as u32 + 1, c[3] as u32 + 1];
            if in_u_star(plane, &x) {
                star[r] = true;
                u_star.push(r as u64);
            }
        }
        r += 1;
        if !it.advance() {
            break;
        }
    }

    let mut parts = vec![u_star.clone()];
    let ids: Vec<u32> = (1..=n as u32).collect();
    for (ai, &a) in ids.iter().enumerate() {
        for &b in &ids[ai + 1..] {
            if plane.line(a) != plane.line(b) {
                continue;
            }
            let rest: Vec<u32> = ids.iter().copied().filter(|&z| z != a && z != b).collect();
            let mut part = Vec::with_capacity(rest.len() * (rest.len() - 1) / 2);
            for (zi, &z) in rest.iter().enumerate() {
                for &w in &rest[zi + 1..] {
                    let mut x = [a, b, z, w];
                    x.sort_unstable();
                    part.push(rank(&x));
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
    }
    let pair_parts = parts.len() - 1;

    let delta_u_star = crate::graph::induced_degrees(g, &u_star).into_iter().max().unwrap_or(0);
    let delta_pair = binom(n as u64 - 4, 2);
    let l = delta_u_star.max(delta_pair) as usize + 1;

    let u1 = cls.count(VertexClass::U1) as u64;
    let (d, d_measured) = if u1.saturating_mul(g.regular_degree()) <= d_budget {
        (external_degree(plane, n, &cls.class, &star) as usize, true)
    } else {
        (g.regular_degree() as usize, false)
    };
    ResidualCover {
        cover: CoverSystem::new(parts, l, d),
        u_star_size: u_star.len(),
        pair_parts,
        delta_u_star,
        delta_pair,
        d_measured,
    }
}

/// Maximum over `X` in `U1` of the number of neighbors in `U1` lying in a
/// part that does not contain `X`. Such a neighbor either has a collinear
/// pair outside `X` or is in `U*` while `X` is not; both make it a member
/// of `U1`, so no lookup is needed.
fn external_degree(plane: &Plane, n: usize, class: &[VertexClass], star: &[bool]) -> u64 {
    let line = |a: u32| plane.line(a);
    let mut best = 0;
    let mut it = Combinations::new(n, 4);
    let mut r = 0usize;
    let mut others = Vec::with_capacity(n);
    loop {
        if class[r] == VertexClass::U1 {
            let c = it.current();
            let x = [c[0] as u32 + 1, c[1] as u32 + 1, c[2] as u32 + 1, c[3] as u32 + 1];
            others.clear();
            others.extend((1..=n as u32).filter(|e| !x.contains(e)));
            let mut count = 0u64;
            for i in 0..4 {
                for j in i + 1..4 {
                    let (a, b) = (x[i], x[j]);
                    let (la, lb) = (line(a), line(b));
                    for (zi, &z) in others.iter().enumerate() {
                        let lz = line(z);
                        let z_pairs = lz == la || lz == lb;
                        for &w in &others[zi + 1..] {
                            let lw = line(w);
                            if z_pairs
                                || lw == lz
                                || lw == la
                                || lw == lb
                                || (!star[r] && in_u_star(plane, &[a, b, z, w]))
                            {
                                count += 1;
                            }
                        }
                    }
                }
            }
            best = best.max(count);
        }
        r += 1;
        if !it.advance() {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn u_star_examples() {
        let pl = Plane::new(PrimeField::new(5).unwrap());
        let id = |x, y| pl.id(x, y);
        // sum zero
        assert!(in_u_star(&pl, &[id(1, 0), id(4, 0), id(0, 1), id(0, 4)]));
        // completion -(4,2) = (1,3), not collinear with any point
        assert!(!in_u_star(&pl, &[id(1, 0), id(0, 1), id(1, 1), id(2, 1)]));
    }
}
