//! The family of 5-sets of `F_p^2 \ 0` in general position summing to zero.

use crate::algebra::{det2, Fp, FpOperator, FpVector, PrimeField};
use crate::designs::DesignFamily;
use crate::graph::VertexSet;

use super::plane::Plane;
use super::G42Error;

/// An ordered 5-tuple of pairwise non-collinear vectors with zero sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ATuple {
    v: [FpVector; 5],
}

impl ATuple {
    pub fn new(v: [FpVector; 5]) -> Result<Self, G42Error> {
        let p = v[0].modulus();
        if v.iter().any(|x| x.modulus() != p) {
            return Err(G42Error::MixedModuli);
        }
        let sum = v.iter().skip(1).fold(v[0], |a, &b| a + b);
        if !sum.is_zero() {
            return Err(G42Error::NonZeroSum);
        }
        for i in 0..5 {
            for j in i + 1..5 {
                if det2(v[i], v[j]).expect("same modulus").is_zero() {
                    return Err(G42Error::Collinear(v[i], v[j]));
                }
            }
        }
        Ok(Self { v })
    }

    pub fn vectors(&self) -> [FpVector; 5] {
        self.v
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.v[0].modulus()).expect("validated on construction")
    }

    /// `det g_ij(A) = det(v_i, v_j)` for 0-based `i != j`.
    pub fn det(&self, i: usize, j: usize) -> Fp {
        det2(self.v[i], self.v[j]).expect("same modulus")
    }

    /// The ten determinants `det g_ij`, `i < j`, in lexicographic order.
    pub fn dets(&self) -> [Fp; 10] {
        let mut out = [self.det(0, 1); 10];
        for (k, (i, j)) in PAIRS.iter().enumerate() {
            out[k] = self.det(*i, *j);
        }
        out
    }

    /// `h A`, position by position.
    pub fn apply(&self, h: &FpOperator) -> ATuple {
        Self {
            v: self.v.map(|x| h.apply(x).expect("same modulus")),
        }
    }

    /// The tuple `(v_perm[0], ..., v_perm[4])`.
    pub fn permuted(&self, perm: [usize; 5]) -> ATuple {
        Self {
            v: perm.map(|i| self.v[i]),
        }
    }

    /// Point indices `x + p*y`, in tuple order.
    pub fn ids(&self) -> [u32; 5] {
        self.v.map(FpVector::index)
    }

    /// The unordered set as sorted point indices.
    pub fn set(&self) -> [u32; 5] {
        let mut s = self.ids();
        s.sort_unstable();
        s
    }
}

/// Unordered pairs `i < j` of `0..5` in lexicographic order.
pub const PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// Every 5-set of pairwise non-collinear nonzero vectors with zero sum,
/// stored as ascending point indices in lexicographic order.
#[derive(Clone, Debug)]
pub struct Family {
    pub(crate) plane: Plane,
    sets: Vec<[u32; 5]>,
}

impl Family {
    /// Enumerates the family for the prime `p >= 5`.
    pub fn build(p: u32) -> Result<Self, G42Error> {
        if p < 5 {
            return Err(G42Error::PrimeTooSmall(p));
        }
        let field = PrimeField::new(p)?;
        let plane = Plane::new(field);
        let top = p * p;
        let mut sets = Vec::new();
        for a in 1..top {
            let la = plane.line(a);
            for b in a + 1..top {
                let lb = plane.line(b);
                if lb == la {
                    continue;
                }
                for c in b + 1..top {
                    let lc = plane.line(c);
                    if lc == la || lc == lb {
                        continue;
                    }
                    for d in c + 1..top {
                        let ld = plane.line(d);
                        if ld == la || ld == lb || ld == lc {
                            continue;
                        }
                        let e = plane.neg_sum(&[a, b, c, d]);
                        if e <= d {
                            continue;
                        }
                        let le = plane.line(e);
                        if le != la && le != lb && le != lc && le != ld {
                            sets.push([a, b, c, d, e]);
                        }
                    }
                }
            }
        }
        Ok(Self { plane, sets })
    }

    pub fn field(&self) -> PrimeField {
        self.plane.field
    }

    pub fn p(&self) -> u32 {
        self.plane.p
    }

    /// Size of the ground set, `p^2 - 1`.
    pub fn n(&self) -> u32 {
        self.plane.n()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[[u32; 5]] {
        &self.sets
    }

    /// Position of a sorted 5-set, if it belongs to the family.
    pub fn index_of(&self, set: &[u32; 5]) -> Option<usize> {
        self.sets.binary_search(set).ok()
    }

    /// The canonical ordering of member `i`: its lexicographically least
    /// tuple, i.e. ascending point indices.
    pub fn ordered(&self, i: usize) -> ATuple {
        let v = self.sets[i].map(|id| self.plane.vector(id));
        ATuple::new(v).expect("family members are valid tuples")
    }

    /// True iff the set is in the family (it need not be sorted).
    pub fn contains(&self, set: &[u32; 5]) -> bool {
        let mut s = *set;
        s.sort_unstable();
        self.index_of(&s).is_some()
    }

    /// The member containing the 4-set `x` (point indices), if any. It is
    /// unique because the fifth element must be `-(x1 + x2 + x3 + x4)`.
    pub fn completion(&self, x: &[u32; 4]) -> Option<usize> {
        let e = self.plane.neg_sum(x);
        if e == 0 || x.contains(&e) {
            return None;
        }
        let mut s = [x[0], x[1], x[2], x[3], e];
        s.sort_unstable();
        self.index_of(&s)
    }

    /// The family as blocks over `[p^2 - 1]`, for design checks.
    pub fn to_design(&self) -> DesignFamily {
        let blocks = self
            .sets
            .iter()
            .map(|s| VertexSet::new(s.to_vec()).expect("sorted and distinct"))
            .collect();
        DesignFamily::new(self.n(), 5, 4, blocks).expect("distinct blocks")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_validation() {
        let f = PrimeField::new(5).unwrap();
        let v = |x, y| f.vector(x, y);
        let a = ATuple::new([v(1, 0), v(0, 1), v(1, 1), v(2, 1), v(1, 2)]).unwrap();
        assert_eq!(a.dets().iter().filter(|d| d.is_zero()).count(), 0);
        assert_eq!(a.det(1, 0), -a.det(0, 1));
        assert!(matches!(
            ATuple::new([v(1, 2), v(2, 4), v(1, 1), v(0, 1), v(1, 2)]),
            Err(G42Error::Collinear(..))
        ));
        assert_eq!(
            ATuple::new([v(1, 0), v(0, 1), v(1, 1), v(2, 1), v(1, 1)]),
            Err(G42Error::NonZeroSum)
        );
    }

    #[test]
    fn family_at_five() {
        let fam = Family::build(5).unwrap();
        let f = fam.field();
        let s = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)].map(|(x, y)| f.vector(x, y).index());
        assert!(fam.contains(&s));
        let (a, b) = (f.vector(1, 2).index(), f.vector(2, 4).index());
        assert!(fam.sets().iter().all(|s| !(s.contains(&a) && s.contains(&b))));
        assert!(Family::build(3).is_err());
    }
}
