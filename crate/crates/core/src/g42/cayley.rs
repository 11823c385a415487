//! Twenty-coloring one orbit along the operators that move two points of
//! the representative onto two others.
//!
//! With `A = (a_1, ..., a_5)` and `g_ij` the operator with columns
//! `a_i, a_j`, the generator `e = g_ij g_kl^-1` sends `a_k -> a_i` and
//! `a_l -> a_j`. Members `hA` and `h'A` meet in at least two points iff
//! `h' = h e` for some generator, up to the stabilizer of `A`. A breadth
//! first walk gives the root color 0 and every step along `e` the
//! increment `ψ(ij) - ψ(kl) (mod 20)`, which is never zero.

use std::collections::VecDeque;

use thiserror::Error;

use crate::algebra::FpOperator;

use super::family::{ATuple, Family, PAIRS};
use super::orbits::OrbitDecomposition;

/// Number of ordered index pairs and of colors per orbit.
pub const SLOTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("ψ is not a bijection onto Z_20")]
    NotBijective,
    #[error("ψ(g_{i}{j}) - ψ(g_{j}{i}) is not 10 mod 20")]
    BadPairing { i: usize, j: usize },
}

/// Slot of the ordered pair `(i, j)`: the rank `k` of `{i, j}` among the
/// lexicographic pairs, plus 10 when `i > j`.
pub fn slot(i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    let k = PAIRS
        .iter()
        .position(|&x| x == (a, b))
        .expect("distinct indices below 5");
    if i < j {
        k
    } else {
        k + 10
    }
}

/// A bijection from the twenty operators `g_ij` to `Z_20` with
/// `ψ(g_ij) = ψ(g_ji) + 10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Psi([u8; SLOTS]);

impl Psi {
    /// Values indexed by [`slot`].
    pub fn new(values: [u8; SLOTS]) -> Result<Self, PsiError> {
        let mut seen = [false; SLOTS];
        for &v in &values {
            if v as usize >= SLOTS || seen[v as usize] {
                return Err(PsiError::NotBijective);
            }
            seen[v as usize] = true;
        }
        for &(i, j) in &PAIRS {
            let d = (values[slot(i, j)] as i32 - values[slot(j, i)] as i32).rem_euclid(20);
            if d != 10 {
                return Err(PsiError::BadPairing { i: i + 1, j: j + 1 });
            }
        }
        Ok(Self(values))
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.0[slot(i, j)]
    }
}

impl Default for Psi {
    /// `ψ(g_ij) = k` and `ψ(g_ji) = k + 10` for the `k`-th pair `i < j`.
    fn default() -> Self {
        let mut v = [0u8; SLOTS];
        for (s, x) in v.iter_mut().enumerate() {
            *x = s as u8;
        }
        Self(v)
    }
}

/// The generator `g_ij g_kl^-1` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EGenerator {
    pub ij: (usize, usize),
    pub kl: (usize, usize),
}

impl EGenerator {
    pub fn operator(&self, a: &ATuple) -> FpOperator {
        let v = a.vectors();
        let g = FpOperator::from_columns(v[self.ij.0], v[self.ij.1]).expect("same field");
        let h = FpOperator::from_columns(v[self.kl.0], v[self.kl.1]).expect("same field");
        g.compose(&h.inverse().expect("non-collinear columns"))
            .expect("same field")
    }

    /// `ψ(g_ij) - ψ(g_kl) (mod 20)`.
    pub fn increment(&self, psi: &Psi) -> u8 {
        ((psi.get(self.ij.0, self.ij.1) as i32 - psi.get(self.kl.0, self.kl.1) as i32).rem_euclid(20)) as u8
    }
}

/// All 380 generators.
pub fn generators() -> Vec<EGenerator> {
    let ordered: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::with_capacity(380);
    for &ij in &ordered {
        for &kl in &ordered {
            if ij != kl {
                out.push(EGenerator { ij, kl });
            }
        }
    }
    out
}

pub const NO_COLOR: u8 = u8::MAX;

/// Result of coloring one orbit, indexed by member position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyColoring {
    /// Color in `0..20`, or [`NO_COLOR`] for excluded and evicted members.
    pub colors: Vec<u8>,
    pub evicted: Vec<bool>,
    /// Steps that reached an already expanded member with a different value
    /// than the walk predicts: `(from, to)` member positions.
    pub conflicts: Vec<(u32, u32)>,
    pub components: usize,
}

impl CayleyColoring {
    pub fn evicted_count(&self) -> usize {
        self.evicted.iter().filter(|&&e| e).count()
    }

    pub fn colors_used(&self) -> usize {
        let mut seen = [false; SLOTS];
        for &c in &self.colors {
            if c != NO_COLOR {
                seen[c as usize] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    }
}

/// Neighbors of a member inside its orbit, with the generator reaching
/// each, computed from the operator `h` realizing the member.
pub(crate) struct OrbitWalker<'a> {
    family: &'a Family,
    dec: &'a OrbitDecomposition,
    orbit: usize,
    /// per generator: its operator, increment and image of the representative
    gens: Vec<(FpOperator, u8, [u32; 5])>,
}

impl<'a> OrbitWalker<'a> {
    pub fn new(family: &'a Family, dec: &'a OrbitDecomposition, orbit: usize, psi: &Psi) -> Self {
        let a = dec.orbits[orbit].representative;
        let plane = &family.plane;
        let gens = generators()
            .iter()
            .map(|g| {
                let e = g.operator(&a);
                let img = a.ids().map(|id| plane.apply(&e, id));
                (e, g.increment(psi), img)
            })
            .collect();
        Self {
            family,
            dec,
            orbit,
            gens,
        }
    }

    /// Calls `f(position, generator index)` for every generator step from
    /// the member realized by `h`, self-loops included.
    pub fn for_each_step(&self, h: &FpOperator, f: &mut impl FnMut(u32, usize)) {
        let plane = &self.family.plane;
        for (gi, (_, _, img)) in self.gens.iter().enumerate() {
            let mut set = img.map(|id| plane.apply(h, id));
            set.sort_unstable();
            let idx = self.family.index_of(&set).expect("orbit is closed under GL_2");
            debug_assert_eq!(self.dec.orbit_of[idx] as usize, self.orbit);
            f(self.dec.position[idx], gi);
        }
    }

    pub fn increment(&self, gen: usize) -> u8 {
        self.gens[gen].1
    }

    pub fn step_operator(&self, h: &FpOperator, gen: usize) -> FpOperator {
        h.compose(&self.gens[gen].0).expect("same field")
    }
}

/// Colors the members with `active[pos]` set. A member expanded after an
/// already expanded neighbor of the same color is evicted; every surviving
/// edge therefore joins different colors.
pub fn cayley_color_orbit(
    family: &Family,
    dec: &OrbitDecomposition,
    orbit: usize,
    active: &[bool],
    psi: &Psi,
) -> CayleyColoring {
    let rec = &dec.orbits[orbit];
    let len = rec.len();
    assert_eq!(active.len(), len);
    let walker = OrbitWalker::new(family, dec, orbit, psi);
    let mut colors = vec![NO_COLOR; len];
    let mut ops: Vec<Option<FpOperator>> = vec![None; len];
    let mut expanded = vec![false; len];
    let mut evicted = vec![false; len];
    let mut conflicts = Vec::new();
    let mut components = 0;
    let mut queue = VecDeque::new();
    for root in 0..len {
        if !active[root] || colors[root] != NO_COLOR {
            continue;
        }
        components += 1;
        colors[root] = 0;
        ops[root] = Some(dec.group[rec.members[root].op as usize]);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let h = ops[u].expect("colored members carry an operator");
            let cu = colors[u];
            let mut steps = Vec::new();
            walker.for_each_step(&h, &mut |v, gi| steps.push((v as usize, gi)));
            for (v, gi) in steps {
                if v == u || !active[v] || evicted[v] {
                    continue;
                }
                let want = (cu + walker.increment(gi)) % 20;
                if colors[v] == NO_COLOR {
                    colors[v] = want;
                    ops[v] = Some(walker.step_operator(&h, gi));
                    queue.push_back(v);
                } else if expanded[v] && !evicted[u] {
                    if colors[v] != want {
                        conflicts.push((u as u32, v as u32));
                    }
                    if colors[v] == cu {
                        evicted[u] = true;
                    }
                }
            }
            expanded[u] = true;
        }
    }
    for (c, &e) in colors.iter_mut().zip(&evicted) {
        if e {
            *c = NO_COLOR;
        }
    }
    CayleyColoring {
        colors,
        evicted,
        conflicts,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn psi_default_and_validation() {
        let psi = Psi::default();
        assert_eq!(psi.get(0, 1), 0);
        assert_eq!(psi.get(1, 0), 10);
        let mut bad = [0u8; SLOTS];
        for (s, x) in bad.iter_mut().enumerate() {
            *x = s as u8;
        }
        bad.swap(0, 10);
        assert!(Psi::new(bad).is_ok());
        bad.swap(0, 1);
        assert!(matches!(Psi::new(bad), Err(PsiError::BadPairing { .. })));
        bad[0] = bad[1];
        assert_eq!(Psi::new(bad), Err(PsiError::NotBijective));
    }

    #[test]
    fn generators_move_two_points() {
        let gens = generators();
        assert_eq!(gens.len(), 380);
        let f = PrimeField::new(5).unwrap();
        let v = |x, y| f.vector(x, y);
        let a = ATuple::new([v(1, 0), v(0, 1), v(1, 1), v(2, 1), v(1, 2)]).unwrap();
        let vs = a.vectors();
        for g in &gens {
            let e = g.operator(&a);
            assert_eq!(e.apply(vs[g.kl.0]).unwrap(), vs[g.ij.0]);
            assert_eq!(e.apply(vs[g.kl.1]).unwrap(), vs[g.ij.1]);
            assert_ne!(g.increment(&Psi::default()), 0);
        }
        let swap = EGenerator { ij: (1, 0), kl: (0, 1) };
        assert_eq!(swap.increment(&Psi::default()), 10);
    }
}
