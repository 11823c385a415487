//! Multiplicative boxes and the wall.
//!
//! For an orbit with representative `A` and determinant set `T~`, the box
//! `B_λ` is the set of residues `±prod_{a in T~} a^{λ_a}` with every
//! `λ_a in [-λ, λ]` and `sum λ_a = 0`; its boundary uses only exponent
//! vectors with some `|λ_a| = λ`. The wall of the orbit is the set of
//! members `hA` with `det h` in `(∂C ∪ R)·δ`, where `C` is a union of `q`
//! random translates of the box, `R` its complement in `F_p^×`, and `δ` a
//! random unit.

use rand::Rng;

use crate::algebra::{Fp, PrimeField};
use crate::rng;

use super::orbits::{OrbitDecomposition, OrbitRecord};

/// Residue subsets of `F_p^×`, indexed by value (entry 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSets {
    pub inner: Vec<bool>,
    pub boundary: Vec<bool>,
}

impl BoxSets {
    pub fn size(&self) -> usize {
        self.inner.iter().filter(|&&b| b).count()
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }
}

/// `B_λ` and `∂B_λ` over the given determinant values (all nonzero).
pub fn box_sets(field: PrimeField, tilde_t: &[Fp], lambda: u32) -> BoxSets {
    let p = field.modulus() as usize;
    let order = p - 1;
    let log = field.log_table();
    let k = tilde_t.len();
    let lam = lambda as i64;
    let span = (k as i64 * lam) as usize;
    let width = 2 * span + 1;
    // reach[(sum + span) * order + logvalue] bit 0: reachable, bit 1: via a
    // boundary exponent
    let mut reach = vec![0u8; width * order];
    reach[span * order] = 1;
    for a in tilde_t {
        let la = log[a.value() as usize] as i64;
        let mut next = vec![0u8; width * order];
        for s in 0..width {
            for r in 0..order {
                let cur = reach[s * order + r];
                if cur == 0 {
                    continue;
                }
                for x in -lam..=lam {
                    let ns = s as i64 + x;
                    if ns < 0 || ns >= width as i64 {
                        continue;
                    }
                    let nr = (r as i64 + x * la).rem_euclid(order as i64) as usize;
                    let mut bits = cur;
                    if x.abs() == lam {
                        bits |= 2;
                    }
                    next[ns as usize * order + nr] |= bits | 1;
                }
            }
        }
        reach = next;
    }
    let g = field.generator();
    let mut inner = vec![false; p];
    let mut boundary = vec![false; p];
    for r in 0..order {
        let bits = reach[span * order + r];
        if bits == 0 {
            continue;
        }
        let v = g.pow(r as i64);
        for w in [v, -v] {
            inner[w.value() as usize] = true;
            if bits & 2 != 0 {
                boundary[w.value() as usize] = true;
            }
        }
    }
    BoxSets { inner, boundary }
}

/// What was sampled and removed in one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWall {
    pub box_size: usize,
    pub boundary_size: usize,
    pub rho: Vec<u32>,
    pub delta: u32,
    /// `(∂C ∪ R)·δ`, indexed by residue.
    pub bad: Vec<bool>,
    /// Fewer than ten distinct determinants.
    pub degenerate: bool,
    pub wall_size: usize,
}

/// Samples the wall of every orbit and stores it in the records. Orbit `j`
/// draws from its own stream, so the result does not depend on the order
/// in which orbits are processed.
pub fn build_wall(dec: &mut OrbitDecomposition, field: PrimeField, lambda: u32, q: u32, seed: u64) -> Vec<OrbitWall> {
    let base = rng::derive_seed(seed, WALL_STREAM);
    let group = &dec.group;
    dec.orbits
        .iter_mut()
        .map(|o| {
            let mut rng = rng::stream(base, o.index as u64);
            wall_for_orbit(o, group, field, lambda, q, &mut rng)
        })
        .collect()
}

const WALL_STREAM: u64 = 0x5741_4c4c;

fn wall_for_orbit(
    o: &mut OrbitRecord,
    group: &[crate::algebra::FpOperator],
    field: PrimeField,
    lambda: u32,
    q: u32,
    rng: &mut impl Rng,
) -> OrbitWall {
    let p = field.modulus();
    let tilde = o.tilde_t();
    let boxes = box_sets(field, &tilde, lambda);
    let rho: Vec<u32> = (0..q).map(|_| rng.gen_range(1..p)).collect();
    let delta = rng.gen_range(1..p);
    let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;

    let mut covered = vec![false; p as usize];
    let mut bad = vec![false; p as usize];
    for &r in &rho {
        for v in 1..p {
            if boxes.inner[v as usize] {
                covered[mul(r, v) as usize] = true;
            }
            if boxes.boundary[v as usize] {
                bad[mul(r, v) as usize] = true;
            }
        }
    }
    let mut shifted = vec![false; p as usize];
    for v in 1..p {
        if bad[v as usize] || !covered[v as usize] {
            shifted[mul(v, delta) as usize] = true;
        }
    }

    // hA = h'A iff h' in h·Stab(A), so hA is in the wall iff some det in
    // det(h)·det(Stab(A)) is bad
    let mut stab_dets: Vec<u32> = o.stabilizer.iter().map(|&s| group[s as usize].det().value()).collect();
    stab_dets.sort_unstable();
    stab_dets.dedup();
    for (m, w) in o.members.iter().zip(o.wall.iter_mut()) {
        let d = group[m.op as usize].det().value();
        *w = stab_dets.iter().any(|&s| shifted[mul(d, s) as usize]);
    }
    OrbitWall {
        box_size: boxes.size(),
        boundary_size: boxes.boundary_size(),
        rho,
        delta,
        bad: shifted,
        degenerate: tilde.len() < 10,
        wall_size: o.wall_size(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_over_one_value_pair() {
        let f = PrimeField::new(7).unwrap();
        // T~ = {2, 3}: exponents (x, -x) with |x| <= 1 give ±{1, 2/3, 3/2}
        let b = box_sets(f, &[f.elem(2), f.elem(3)], 1);
        let two_thirds = (f.elem(2) * f.elem(3).inverse().unwrap()).value() as usize;
        let three_halves = (f.elem(3) * f.elem(2).inverse().unwrap()).value() as usize;
        let mut want = vec![false; 7];
        for v in [1, 6, two_thirds, 7 - two_thirds, three_halves, 7 - three_halves] {
            want[v] = true;
        }
        assert_eq!(b.inner, want);
        assert!(!b.boundary[1] && !b.boundary[6]);
        assert!(b.boundary[two_thirds] && b.boundary[three_halves]);
    }

    #[test]
    fn boundary_is_inside_and_negation_closed() {
        let f = PrimeField::new(11).unwrap();
        let t: Vec<Fp> = [2, 3, 5, 7].iter().map(|&x| f.elem(x)).collect();
        for lambda in 1..4 {
            let b = box_sets(f, &t, lambda);
            for v in 1..11usize {
                assert!(!b.boundary[v] || b.inner[v]);
                assert_eq!(b.inner[v], b.inner[11 - v]);
            }
        }
    }
}
