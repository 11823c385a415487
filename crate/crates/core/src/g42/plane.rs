//! Raw point arithmetic on `F_p^2 \ 0`. A point is its index `x + p*y`,
//! which is also its element of the ground set `[p^2 - 1]`.

use crate::algebra::{FpOperator, FpVector, PrimeField};

#[derive(Clone, Debug)]
pub(crate) struct Plane {
    pub field: PrimeField,
    pub p: u32,
    /// line through the origin containing each point; `u16::MAX` for 0
    line: Vec<u16>,
}

impl Plane {
    pub fn new(field: PrimeField) -> Self {
        let p = field.modulus();
        let mut line = vec![u16::MAX; (p * p) as usize];
        for id in 1..p * p {
            let (x, y) = (id % p, id / p);
            line[id as usize] = if y == 0 {
                p as u16
            } else {
                ((x as u64 * inv(y, p) as u64) % p as u64) as u16
            };
        }
        Self { field, p, line }
    }

    /// Number of nonzero points.
    pub fn n(&self) -> u32 {
        self.p * self.p - 1
    }

    #[inline]
    pub fn xy(&self, id: u32) -> (u32, u32) {
        (id % self.p, id / self.p)
    }

    #[inline]
    pub fn id(&self, x: u32, y: u32) -> u32 {
        x + self.p * y
    }

    #[inline]
    pub fn line(&self, id: u32) -> u16 {
        self.line[id as usize]
    }

    /// `-(a + b + c + d)`.
    #[inline]
    pub fn neg_sum(&self, ids: &[u32]) -> u32 {
        let p = self.p;
        let (mut sx, mut sy) = (0, 0);
        for &i in ids {
            let (x, y) = self.xy(i);
            sx += x;
            sy += y;
        }
        self.id((p - sx % p) % p, (p - sy % p) % p)
    }

    #[inline]
    pub fn apply(&self, g: &FpOperator, id: u32) -> u32 {
        let (x, y) = self.xy(id);
        let (x, y) = g.apply_raw(x, y);
        self.id(x, y)
    }

    pub fn vector(&self, id: u32) -> FpVector {
        FpVector::from_index(self.field, id)
    }
}

fn inv(a: u32, p: u32) -> u32 {
    let (mut r, mut base, mut e) = (1u64, a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_partition_the_nonzero_points() {
        let pl = Plane::new(PrimeField::new(5).unwrap());
        let mut sizes = vec![0; 6];
        for id in 1..25 {
            sizes[pl.line(id) as usize] += 1;
        }
        assert_eq!(sizes, vec![4; 6]);
        // (1,2) and (2,4) share a line
        assert_eq!(pl.line(pl.id(1, 2)), pl.line(pl.id(2, 4)));
        assert_eq!(pl.neg_sum(&[pl.id(1, 0), pl.id(0, 1)]), pl.id(4, 4));
    }
}
