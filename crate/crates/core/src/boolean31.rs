//! Coloring `G(2^t, 3, 1)` by translation classes of triples in `F_2^t`.
//!
//! Two triples in one translation class never meet in exactly one point,
//! and the `C(n,3)` triples fall into exactly `(n-1)(n-2)/6` classes of
//! size `n`. Element `e` of `[n]` is identified with the binary vector of
//! `e - 1`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::XorVector;
use crate::graph::{Coloring, ColoringMeta, KneserGraph};

/// Largest supported dimension (`2^12 = 4096` points).
pub const MAX_DIMENSION: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Boolean31Error {
    #[error("triple elements must be distinct")]
    NotDistinct,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("dimension t={0} outside 2..={MAX_DIMENSION}")]
    BadDimension(u32),
}

/// The sorted pairwise XORs of a triple; constant exactly on translation
/// classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleClassKey([XorVector; 3]);

impl TripleClassKey {
    pub fn values(&self) -> [XorVector; 3] {
        self.0
    }
}

impl fmt::Display for TripleClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

pub fn class_key(a: XorVector, b: XorVector, c: XorVector) -> Result<TripleClassKey, Boolean31Error> {
    if a.dim() != b.dim() || b.dim() != c.dim() {
        return Err(Boolean31Error::DimensionMismatch);
    }
    if a == b || b == c || a == c {
        return Err(Boolean31Error::NotDistinct);
    }
    let mut k = [a ^ b, a ^ c, b ^ c];
    k.sort();
    Ok(TripleClassKey(k))
}

/// `(n-1)(n-2)/6` colors on `G(2^t, 3, 1)`, numbered by the lexicographic
/// order of the class keys.
pub fn color_g_n31(t: u32) -> Result<Coloring, Boolean31Error> {
    if !(2..=MAX_DIMENSION).contains(&t) {
        return Err(Boolean31Error::BadDimension(t));
    }
    let n = 1u32 << t;
    let g = KneserGraph::exact(n, 3, 1).expect("valid parameters");
    let elem = |e: u32| XorVector::new(e - 1, t as u8).expect("in range");
    let keys: Vec<TripleClassKey> = g
        .vertices()
        .map(|v| {
            let e = v.elements();
            class_key(elem(e[0]), elem(e[1]), elem(e[2])).expect("distinct")
        })
        .collect();
    let mut index: BTreeMap<TripleClassKey, u32> = keys.iter().map(|&k| (k, 0)).collect();
    for (i, v) in index.values_mut().enumerate() {
        *v = i as u32;
    }
    let colors = keys.iter().map(|k| index[k]).collect();
    let meta = ColoringMeta::new("boolean31", 0).with_param("t", t);
    Ok(Coloring::new(g, colors, meta).expect("dense class indices"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(bits: u32, t: u8) -> XorVector {
        XorVector::new(bits, t).unwrap()
    }

    #[test]
    fn keys() {
        let k = class_key(x(0b000, 3), x(0b001, 3), x(0b010, 3)).unwrap();
        assert_eq!(k.to_string(), "{001,010,011}");
        let shifted = class_key(x(0b100, 3), x(0b101, 3), x(0b110, 3)).unwrap();
        assert_eq!(k, shifted);
        assert_eq!(class_key(x(1, 3), x(1, 3), x(2, 3)), Err(Boolean31Error::NotDistinct));
    }

    #[test]
    fn all_triples_of_f2_squared_share_a_key() {
        let mut keys: Vec<TripleClassKey> = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    keys.push(class_key(x(a, 2), x(b, 2), x(c, 2)).unwrap());
                }
            }
        }
        keys.dedup();
        assert_eq!(keys.len(), 1);
        assert_eq!(keys[0].to_string(), "{01,10,11}");
    }

    #[test]
    fn small_color_counts() {
        assert_eq!(color_g_n31(2).unwrap().num_colors(), 1);
        assert_eq!(color_g_n31(3).unwrap().num_colors(), 7);
        assert!(color_g_n31(1).is_err());
    }
}
