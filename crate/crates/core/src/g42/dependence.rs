//! Multiplicative dependences between the determinants `det g_ij(A)`.
//!
//! A dependence `(d_ij)` evaluates to `prod det(v_i, v_j)^d_ij`. Since
//! `det(v_j, v_i) = -det(v_i, v_j)`, its value only depends on the sign
//! parity of `D = sum_{i<j} d_ij` and the ten exponents `e_ij = d_ij + d_ji`
//! (`i < j`); such a pair is a [`DependenceClass`].

use crate::algebra::{Fp, PrimeField};

use super::family::{ATuple, Family, PAIRS};
use super::orbits::orbit_decompose;
use super::G42Error;

/// Default cap on the number of dependence classes enumerated.
pub const DEFAULT_CLASS_BUDGET: u64 = 20_000_000;

/// Integer exponents `d_ij`, `i != j`, 0-based, with total sum zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dependence {
    d: [[i32; 5]; 5],
}

impl Dependence {
    pub fn new(d: [[i32; 5]; 5]) -> Result<Self, G42Error> {
        if (0..5).any(|i| d[i][i] != 0) {
            return Err(G42Error::BadDependence("diagonal entries must be zero".into()));
        }
        let total: i64 = d.iter().flatten().map(|&x| x as i64).sum();
        if total != 0 {
            return Err(G42Error::BadDependence(format!("entries sum to {total}, not 0")));
        }
        Ok(Self { d })
    }

    /// Builds from `(i, j, d_ij)` triples; unspecified entries are zero.
    pub fn from_entries(entries: &[(usize, usize, i32)]) -> Result<Self, G42Error> {
        let mut d = [[0; 5]; 5];
        for &(i, j, v) in entries {
            if i >= 5 || j >= 5 {
                return Err(G42Error::BadDependence(format!("index ({i}, {j}) out of range")));
            }
            d[i][j] += v;
        }
        Self::new(d)
    }

    pub fn zero() -> Self {
        Self { d: [[0; 5]; 5] }
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.d[i][j]
    }

    /// `(d_ij + d'_ij)`.
    pub fn product(&self, other: &Dependence) -> Dependence {
        let mut d = self.d;
        for (row, orow) in d.iter_mut().zip(&other.d) {
            for (x, y) in row.iter_mut().zip(orow) {
                *x += y;
            }
        }
        Dependence { d }
    }

    /// `1/2 * sum_{i<j} |d_ij + d_ji|`.
    pub fn length(&self) -> u32 {
        self.class().length()
    }

    pub fn class(&self) -> DependenceClass {
        let mut e = [0; 10];
        let mut parity = 0i64;
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            e[k] = self.d[i][j] + self.d[j][i];
            parity += self.d[i][j] as i64;
        }
        DependenceClass {
            negative: parity.rem_euclid(2) == 1,
            e,
        }
    }

    /// True iff `d_ij + d_ji = 0` for all pairs and `D` is even.
    pub fn is_trivial(&self) -> bool {
        self.class().is_identity()
    }

    pub fn eval(&self, a: &ATuple) -> Fp {
        let mut acc = a.field().one();
        for i in 0..5 {
            for j in 0..5 {
                if i != j && self.d[i][j] != 0 {
                    acc = acc * a.det(i, j).pow(self.d[i][j] as i64);
                }
            }
        }
        acc
    }
}

/// `prod_{i != j} det(g_ij(A))^d_ij`.
pub fn eval_dependence(w: &Dependence, a: &ATuple) -> Fp {
    w.eval(a)
}

pub fn is_trivial(w: &Dependence) -> bool {
    w.is_trivial()
}

/// The value-determining part of a dependence: `(-1)^D * prod_{i<j} det_ij^e_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DependenceClass {
    pub negative: bool,
    /// `e_ij` for the pairs in lexicographic order
    pub e: [i32; 10],
}

impl DependenceClass {
    pub fn length(&self) -> u32 {
        self.e.iter().map(|x| x.unsigned_abs()).sum::<u32>() / 2
    }

    pub fn is_identity(&self) -> bool {
        !self.negative && self.e.iter().all(|&x| x == 0)
    }

    pub fn eval(&self, a: &ATuple) -> Fp {
        let dets = a.dets();
        let mut acc = a.field().one();
        for (k, &x) in self.e.iter().enumerate() {
            if x != 0 {
                acc = acc * dets[k].pow(x as i64);
            }
        }
        if self.negative {
            -acc
        } else {
            acc
        }
    }

    /// A dependence in this class: `d_ij = e_ij` for `i < j`, plus
    /// `d_01 += 1, d_10 -= 1` for the sign.
    pub fn representative(&self) -> Dependence {
        let mut d = [[0; 5]; 5];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            d[i][j] = self.e[k];
        }
        let total: i32 = self.e.iter().sum();
        debug_assert_eq!(total, 0);
        if self.negative {
            d[0][1] += 1;
            d[1][0] -= 1;
        }
        Dependence { d }
    }

    /// Exponent of the primitive root, given the logs of the ten
    /// determinants.
    #[inline]
    fn log_value(&self, logs: &[u32; 10], order: i64) -> i64 {
        let mut acc = if self.negative { order / 2 } else { 0 };
        for (k, &x) in self.e.iter().enumerate() {
            acc += x as i64 * logs[k] as i64;
        }
        acc.rem_euclid(order)
    }
}

/// All classes of length at most `t` except the identity: a sign and
/// `e in Z^10` with `sum e = 0` and `sum |e| <= 2t`.
pub fn enumerate_classes(t: u32, budget: u64) -> Result<Vec<DependenceClass>, G42Error> {
    fn rec(
        k: usize,
        left: i32,
        sum: i32,
        e: &mut [i32; 10],
        out: &mut Vec<[i32; 10]>,
        budget: u64,
    ) -> Result<(), G42Error> {
        if sum.abs() > left {
            return Ok(());
        }
        if k == 10 {
            if sum == 0 {
                if out.len() as u64 * 2 >= budget {
                    return Err(G42Error::BudgetExceeded { budget });
                }
                out.push(*e);
            }
            return Ok(());
        }
        for x in -left..=left {
            e[k] = x;
            rec(k + 1, left - x.abs(), sum + x, e, out, budget)?;
        }
        e[k] = 0;
        Ok(())
    }
    let mut vectors = Vec::new();
    rec(0, 2 * t as i32, 0, &mut [0; 10], &mut vectors, budget)?;
    let mut out = Vec::with_capacity(vectors.len() * 2);
    for e in vectors {
        for negative in [false, true] {
            let c = DependenceClass { negative, e };
            if !c.is_identity() {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Decides shortness: whether some nontrivial class of length at most `t`
/// evaluates to 1. A class is trivial when it is identically 1 on the
/// reference tuples, which must meet every `GL_2`-orbit of ordered tuples.
#[derive(Clone, Debug)]
pub struct ShortDetector {
    field: PrimeField,
    t: u32,
    log: Vec<u32>,
    classes: Vec<DependenceClass>,
    trivial: Vec<DependenceClass>,
}

impl ShortDetector {
    pub fn new(field: PrimeField, t: u32, budget: u64, reference: &[ATuple]) -> Result<Self, G42Error> {
        let log = field.log_table();
        let order = field.modulus() as i64 - 1;
        let logs: Vec<[u32; 10]> = reference.iter().map(|a| dets_log(&log, a)).collect();
        let (mut classes, mut trivial) = (Vec::new(), Vec::new());
        for c in enumerate_classes(t, budget)? {
            if logs.iter().all(|l| c.log_value(l, order) == 0) {
                trivial.push(c);
            } else {
                classes.push(c);
            }
        }
        Ok(Self {
            field,
            t,
            log,
            classes,
            trivial,
        })
    }

    /// Detector whose reference set is every ordering of every orbit
    /// representative of the family.
    pub fn for_family(family: &Family, t: u32, budget: u64) -> Result<Self, G42Error> {
        let decomposition = orbit_decompose(family);
        let reference: Vec<ATuple> = decomposition
            .orbits
            .iter()
            .flat_map(|o| all_orderings(&o.representative))
            .collect();
        Self::new(family.field(), t, budget, &reference)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Number of nontrivial classes scanned per tuple.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Non-identity classes that are nevertheless identically 1.
    pub fn trivial_classes(&self) -> &[DependenceClass] {
        &self.trivial
    }

    /// A nontrivial class of length at most `t` with value 1 on `a`.
    pub fn witness(&self, a: &ATuple) -> Option<DependenceClass> {
        debug_assert_eq!(a.field(), self.field);
        let logs = dets_log(&self.log, a);
        let order = self.field.modulus() as i64 - 1;
        self.classes.iter().copied().find(|c| c.log_value(&logs, order) == 0)
    }

    pub fn is_short(&self, a: &ATuple) -> bool {
        self.witness(a).is_some()
    }
}

/// One-off shortness test. Builds the family of `a`'s field to decide
/// which classes are trivial, so prefer a shared [`ShortDetector`].
pub fn detect_short(a: &ATuple, t: u32) -> Result<bool, G42Error> {
    let family = Family::build(a.field().modulus())?;
    Ok(ShortDetector::for_family(&family, t, DEFAULT_CLASS_BUDGET)?.is_short(a))
}

fn dets_log(log: &[u32], a: &ATuple) -> [u32; 10] {
    a.dets().map(|d| log[d.value() as usize])
}

/// The 120 orderings of a tuple.
pub fn all_orderings(a: &ATuple) -> Vec<ATuple> {
    let mut out = Vec::with_capacity(120);
    let mut perm = [0, 1, 2, 3, 4];
    permute(&mut perm, 0, &mut |p| out.push(a.permuted(*p)));
    out
}

fn permute(p: &mut [usize; 5], k: usize, f: &mut impl FnMut(&[usize; 5])) {
    if k == 5 {
        f(p);
        return;
    }
    for i in k..5 {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_tuple() -> ATuple {
        let f = PrimeField::new(5).unwrap();
        let v = |x, y| f.vector(x, y);
        ATuple::new([v(1, 0), v(0, 1), v(1, 1), v(2, 1), v(1, 2)]).unwrap()
    }

    #[test]
    fn length_and_triviality() {
        let w = Dependence::from_entries(&[(0, 1, 1), (1, 0, -1)]).unwrap();
        assert_eq!(w.length(), 0);
        assert!(!w.is_trivial());
        assert_eq!(w.eval(&sample_tuple()).value(), 4);
        let w2 = w.product(&Dependence::from_entries(&[(0, 2, 1), (2, 0, -1)]).unwrap());
        assert!(w2.is_trivial());
        assert_eq!(w2.eval(&sample_tuple()).value(), 1);
        assert!(Dependence::from_entries(&[(0, 1, 1)]).is_err());
        let w3 = Dependence::from_entries(&[(0, 1, 2), (2, 3, -1), (3, 2, -1)]).unwrap();
        assert_eq!(w3.length(), 2);
    }

    #[test]
    fn class_representative_round_trips() {
        let c = DependenceClass {
            negative: true,
            e: [1, -1, 0, 0, 2, 0, 0, -2, 0, 0],
        };
        let d = c.representative();
        assert_eq!(d.class(), c);
        assert_eq!(d.eval(&sample_tuple()), c.eval(&sample_tuple()));
    }

    #[test]
    fn class_counts() {
        // length 0: only the sign
        assert_eq!(enumerate_classes(0, DEFAULT_CLASS_BUDGET).unwrap().len(), 1);
        // length 1: e = +1 at one pair, -1 at another; two signs
        assert_eq!(enumerate_classes(1, DEFAULT_CLASS_BUDGET).unwrap().len(), 1 + 2 * 90);
        assert!(matches!(
            enumerate_classes(4, 1000),
            Err(G42Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn orderings_are_distinct() {
        let mut all = all_orderings(&sample_tuple());
        all.sort_by_key(|a| a.ids());
        all.dedup();
        assert_eq!(all.len(), 120);
    }
}
