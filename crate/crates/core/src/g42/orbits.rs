//! Orbits of the family under `GL_2(F_p)`.

use crate::algebra::{gl2_enumerate, Fp, FpOperator};

use super::dependence::ShortDetector;
use super::family::{ATuple, Family};

/// A member set of an orbit and the index (into the group) of an operator
/// `h` with `h A = member`, `A` the representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitMember {
    pub set: u32,
    pub op: u32,
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub index: usize,
    /// Canonical ordering of the lexicographically least member.
    pub representative: ATuple,
    /// Members in order of discovery; the representative comes first.
    pub members: Vec<OrbitMember>,
    /// Group indices of the operators fixing the representative as a set.
    pub stabilizer: Vec<u32>,
    /// `det g_ij(A)` for `i < j`, pairs in lexicographic order.
    pub dets: [Fp; 10],
    pub short: bool,
    /// Per member: removed by the wall.
    pub wall: Vec<bool>,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The distinct values among [`Self::dets`], ascending.
    pub fn tilde_t(&self) -> Vec<Fp> {
        let mut t = self.dets.to_vec();
        t.sort_unstable();
        t.dedup();
        t
    }

    pub fn wall_size(&self) -> usize {
        self.wall.iter().filter(|&&w| w).count()
    }
}

/// The family split into orbits, with the group and reverse lookups.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    /// `GL_2(F_p)` in enumeration order.
    pub group: Vec<FpOperator>,
    pub orbits: Vec<OrbitRecord>,
    /// Per family index: its orbit.
    pub orbit_of: Vec<u32>,
    /// Per family index: its position in the orbit's member list.
    pub position: Vec<u32>,
}

impl OrbitDecomposition {
    /// Sets every orbit's short flag. Shortness is an orbit invariant, so
    /// only representatives are tested.
    pub fn mark_short(&mut self, detector: &ShortDetector) {
        for o in &mut self.orbits {
            o.short = detector.is_short(&o.representative);
        }
    }

    pub fn short_sets(&self) -> usize {
        self.orbits.iter().filter(|o| o.short).map(OrbitRecord::len).sum()
    }
}

/// Walks the group from the least unvisited member of the family. Every
/// member records the first operator reaching it, trying the identity
/// first and then the group in enumeration order.
pub fn orbit_decompose(family: &Family) -> OrbitDecomposition {
    let group = gl2_enumerate(family.field());
    let plane = &family.plane;
    let none = u32::MAX;
    let mut orbit_of = vec![none; family.len()];
    let mut position = vec![none; family.len()];
    let identity = FpOperator::identity(family.field());
    let id_idx = group
        .iter()
        .position(|g| *g == identity)
        .expect("identity is in the group");
    // the identity goes first so that the representative is member 0
    let walk: Vec<usize> = std::iter::once(id_idx)
        .chain((0..group.len()).filter(|&i| i != id_idx))
        .collect();
    let mut orbits = Vec::new();
    for start in 0..family.len() {
        if orbit_of[start] != none {
            continue;
        }
        let j = orbits.len() as u32;
        let rep = family.sets()[start];
        let mut members = Vec::new();
        let mut stabilizer = Vec::new();
        for &gi in &walk {
            let g = &group[gi];
            let mut img = rep.map(|id| plane.apply(g, id));
            img.sort_unstable();
            let idx = family.index_of(&img).expect("the family is invariant under GL_2");
            if idx == start {
                stabilizer.push(gi as u32);
            }
            if orbit_of[idx] == none {
                orbit_of[idx] = j;
                position[idx] = members.len() as u32;
                members.push(OrbitMember {
                    set: idx as u32,
                    op: gi as u32,
                });
            }
        }
        let representative = family.ordered(start);
        let len = members.len();
        orbits.push(OrbitRecord {
            index: j as usize,
            representative,
            members,
            stabilizer,
            dets: representative.dets(),
            short: false,
            wall: vec![false; len],
        });
    }
    OrbitDecomposition {
        group,
        orbits,
        orbit_of,
        position,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_stabilizer_at_five() {
        let fam = Family::build(5).unwrap();
        let dec = orbit_decompose(&fam);
        let order = dec.group.len();
        assert_eq!(order, 480);
        let total: usize = dec.orbits.iter().map(OrbitRecord::len).sum();
        assert_eq!(total, fam.len());
        for o in &dec.orbits {
            assert_eq!(o.len() * o.stabilizer.len(), order);
            assert_eq!(
                o.members[0].set as usize,
                fam.index_of(&o.representative.set()).unwrap()
            );
            for m in &o.members {
                let h = &dec.group[m.op as usize];
                assert_eq!(o.representative.apply(h).set(), fam.sets()[m.set as usize]);
            }
        }
    }
}
