//! Arithmetic over prime fields `F_p`, vectors of `F_p^2`, the group
//! `GL_2(F_p)`, and XOR vectors of `F_2^t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest modulus accepted by [`PrimeField::new`].
pub const DEFAULT_PRIME_CAP: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {p} exceeds the configured cap {cap}")]
    AboveCap { p: u32, cap: u32 },
    #[error("mismatched moduli {0} and {1}")]
    ModulusMismatch(u32, u32),
    #[error("vectors {0} and {1} are collinear")]
    Collinear(FpVector, FpVector),
    #[error("operator is singular")]
    Singular,
    #[error("xor vector {bits} does not fit in dimension {dim}")]
    XorOutOfRange { bits: u32, dim: u8 },
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        Self::with_cap(p, DEFAULT_PRIME_CAP)
    }

    pub fn with_cap(p: u32, cap: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if p > cap {
            return Err(AlgebraError::AboveCap { p, cap });
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces any integer into the field.
    #[inline]
    pub fn elem(self, v: i64) -> Fp {
        Fp {
            value: v.rem_euclid(self.p as i64) as u32,
            p: self.p,
        }
    }

    pub fn zero(self) -> Fp {
        self.elem(0)
    }

    pub fn one(self) -> Fp {
        self.elem(1)
    }

    pub fn vector(self, x: i64, y: i64) -> FpVector {
        FpVector {
            x: self.elem(x),
            y: self.elem(y),
        }
    }

    /// Smallest primitive root modulo `p`.
    pub fn generator(self) -> Fp {
        let order = self.p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (1..self.p)
            .map(|g| self.elem(g as i64))
            .find(|g| factors.iter().all(|&q| g.pow((order / q) as i64).value != 1))
            .expect("every prime field has a primitive root")
    }

    /// Discrete-log table: `table[x] = k` with `g^k = x` for the primitive root `g`.
    /// Entry 0 is unused.
    pub fn log_table(self) -> Vec<u32> {
        let g = self.generator();
        let mut table = vec![u32::MAX; self.p as usize];
        let mut x = self.one();
        for k in 0..self.p - 1 {
            table[x.value as usize] = k;
            x = x * g;
        }
        table
    }
}

/// An element of `F_p`, always stored in least non-negative form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn checked_add(self, o: Fp) -> Result<Fp, AlgebraError> {
        same_modulus(self.p, o.p)?;
        Ok(self + o)
    }

    pub fn checked_mul(self, o: Fp) -> Result<Fp, AlgebraError> {
        same_modulus(self.p, o.p)?;
        Ok(self * o)
    }

    /// `self^e`; negative exponents invert first. `0^e` for `e < 0` is an error.
    pub fn try_pow(self, e: i64) -> Result<Fp, AlgebraError> {
        if e < 0 {
            return Ok(self.inverse()?.pow(-e));
        }
        Ok(self.pow(e))
    }

    /// `self^e` for `e >= 0`. Panics on a negative exponent of zero.
    pub fn pow(self, e: i64) -> Fp {
        if e < 0 {
            return self.inverse().expect("negative power of zero").pow(-e);
        }
        let p = self.p as u64;
        let mut base = self.value as u64;
        let mut e = e as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            p: self.p,
        }
    }

    pub fn inverse(self) -> Result<Fp, AlgebraError> {
        if self.value == 0 {
            return Err(AlgebraError::Singular);
        }
        Ok(self.pow(self.p as i64 - 2))
    }
}

#[inline]
fn same_modulus(a: u32, b: u32) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::ModulusMismatch(a, b))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator impls panic on mismatched moduli; use the `checked_*` forms when
// the operands come from different sources.
impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        assert_eq!(self.p, o.p, "mismatched moduli");
        Fp {
            value: ((self.value as u64 + o.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        self + (-o)
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        assert_eq!(self.p, o.p, "mismatched moduli");
        Fp {
            value: ((self.value as u64 * o.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

/// A vector of `F_p^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    pub x: Fp,
    pub y: Fp,
}

impl FpVector {
    pub fn new(x: Fp, y: Fp) -> Result<Self, AlgebraError> {
        same_modulus(x.p, y.p)?;
        Ok(Self { x, y })
    }

    pub fn modulus(self) -> u32 {
        self.x.p
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `x + p*y`, a bijection of `F_p^2` onto `0..p^2`.
    pub fn index(self) -> u32 {
        self.x.value + self.x.p * self.y.value
    }

    pub fn from_index(field: PrimeField, idx: u32) -> Self {
        let p = field.modulus();
        field.vector((idx % p) as i64, (idx / p) as i64)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for FpVector {
    type Output = FpVector;
    fn add(self, o: FpVector) -> FpVector {
        FpVector {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl Neg for FpVector {
    type Output = FpVector;
    fn neg(self) -> FpVector {
        FpVector { x: -self.x, y: -self.y }
    }
}

/// `det(a, b) = a.x*b.y - a.y*b.x`.
pub fn det2(a: FpVector, b: FpVector) -> Result<Fp, AlgebraError> {
    same_modulus(a.modulus(), b.modulus())?;
    Ok(a.x * b.y - a.y * b.x)
}

/// True iff `a` and `b` span at most a line; zero is collinear with everything.
pub fn collinear(a: FpVector, b: FpVector) -> Result<bool, AlgebraError> {
    Ok(det2(a, b)?.is_zero())
}

/// A 2x2 matrix over `F_p` with its determinant cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpOperator {
    field: PrimeField,
    // row-major [[a, b], [c, d]]
    m: [u32; 4],
    det: u32,
}

impl FpOperator {
    pub fn from_rows(field: PrimeField, a: i64, b: i64, c: i64, d: i64) -> Self {
        let e = |v: i64| field.elem(v).value;
        Self::from_raw(field, [e(a), e(b), e(c), e(d)])
    }

    fn from_raw(field: PrimeField, m: [u32; 4]) -> Self {
        let p = field.modulus() as u64;
        let det = ((m[0] as u64 * m[3] as u64) % p + p - (m[1] as u64 * m[2] as u64) % p) % p;
        Self {
            field,
            m,
            det: det as u32,
        }
    }

    /// The operator whose columns are `a` and `b` (it sends `e1 -> a`, `e2 -> b`).
    pub fn from_columns(a: FpVector, b: FpVector) -> Result<Self, AlgebraError> {
        same_modulus(a.modulus(), b.modulus())?;
        let field = PrimeField { p: a.modulus() };
        Ok(Self::from_raw(field, [a.x.value, b.x.value, a.y.value, b.y.value]))
    }

    pub fn identity(field: PrimeField) -> Self {
        Self::from_raw(field, [1, 0, 0, 1])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> [u32; 4] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Fp {
        Fp {
            value: self.m[2 * row + col],
            p: self.field.p,
        }
    }

    pub fn det(&self) -> Fp {
        Fp {
            value: self.det,
            p: self.field.p,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.det != 0
    }

    pub fn apply(&self, v: FpVector) -> Result<FpVector, AlgebraError> {
        same_modulus(self.field.p, v.modulus())?;
        let (x, y) = self.apply_raw(v.x.value, v.y.value);
        Ok(FpVector {
            x: Fp {
                value: x,
                p: self.field.p,
            },
            y: Fp {
                value: y,
                p: self.field.p,
            },
        })
    }

    #[inline]
    pub(crate) fn apply_raw(&self, x: u32, y: u32) -> (u32, u32) {
        let p = self.field.p as u64;
        let m = self.m.map(u64::from);
        let (x, y) = (x as u64, y as u64);
        (((m[0] * x + m[1] * y) % p) as u32, ((m[2] * x + m[3] * y) % p) as u32)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FpOperator) -> Result<FpOperator, AlgebraError> {
        same_modulus(self.field.p, other.field.p)?;
        let p = self.field.p as u64;
        let (a, b) = (self.m.map(u64::from), other.m.map(u64::from));
        let m = [
            ((a[0] * b[0] + a[1] * b[2]) % p) as u32,
            ((a[0] * b[1] + a[1] * b[3]) % p) as u32,
            ((a[2] * b[0] + a[3] * b[2]) % p) as u32,
            ((a[2] * b[1] + a[3] * b[3]) % p) as u32,
        ];
        Ok(Self::from_raw(self.field, m))
    }

    pub fn inverse(&self) -> Result<FpOperator, AlgebraError> {
        let inv = self.det().inverse()?;
        let p = self.field.p as i64;
        let m = &self.m;
        let e = |v: i64| (self.field.elem(v) * inv).value;
        Ok(Self::from_raw(
            self.field,
            [e(m[3] as i64), e(p - m[1] as i64), e(p - m[2] as i64), e(m[0] as i64)],
        ))
    }
}

impl fmt::Display for FpOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

/// The operator `g_{a,b}` sending the standard basis to `(a, b)`.
pub fn g_ab(a: FpVector, b: FpVector) -> Result<FpOperator, AlgebraError> {
    if collinear(a, b)? {
        return Err(AlgebraError::Collinear(a, b));
    }
    FpOperator::from_columns(a, b)
}

/// Every element of `GL_2(F_p)` exactly once, in lexicographic order of the
/// row-major entries.
pub fn gl2_enumerate(field: PrimeField) -> Vec<FpOperator> {
    let p = field.modulus();
    let mut out = Vec::with_capacity(((p * p - 1) * (p * p - p)) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let g = FpOperator::from_raw(field, [a, b, c, d]);
                    if g.is_invertible() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// `|GL_2(F_p)| = (p^2 - 1)(p^2 - p)`.
pub fn gl2_order(field: PrimeField) -> usize {
    let p = field.modulus() as usize;
    (p * p - 1) * (p * p - p)
}

/// An element of `F_2^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XorVector {
    bits: u32,
    dim: u8,
}

impl XorVector {
    pub fn new(bits: u32, dim: u8) -> Result<Self, AlgebraError> {
        if dim >= 32 || bits >> dim != 0 {
            return Err(AlgebraError::XorOutOfRange { bits, dim });
        }
        Ok(Self { bits, dim })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn dim(self) -> u8 {
        self.dim
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

impl std::ops::BitXor for XorVector {
    type Output = XorVector;
    fn bitxor(self, o: XorVector) -> XorVector {
        assert_eq!(self.dim, o.dim, "mismatched dimensions");
        XorVector {
            bits: self.bits ^ o.bits,
            dim: self.dim,
        }
    }
}

impl fmt::Display for XorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.dim as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Count invertible matrices by filtering all p^4 matrices on ad - bc != 0.
    fn brute_force_gl2_count(p: i64) -> usize {
        let mut count = 0;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d - b * c).rem_euclid(p) != 0 {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn gl2_sizes_match_brute_force() {
        for (p, expected) in [(2, 6), (3, 48), (5, 480)] {
            assert_eq!(brute_force_gl2_count(p as i64), expected);
            let ops = gl2_enumerate(f(p));
            assert_eq!(ops.len(), expected);
            let mut uniq = ops.clone();
            uniq.sort_by_key(|g| g.entries());
            uniq.dedup();
            assert_eq!(uniq.len(), expected);
        }
    }

    #[test]
    fn composite_and_capped_moduli_rejected() {
        assert_eq!(PrimeField::new(9), Err(AlgebraError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(AlgebraError::NotPrime(1)));
        assert_eq!(PrimeField::new(37), Err(AlgebraError::AboveCap { p: 37, cap: 31 }));
        assert!(PrimeField::with_cap(37, 40).is_ok());
        assert!(PrimeField::new(13).is_ok());
    }

    #[test]
    fn g_ab_examples() {
        let k = f(5);
        let id = g_ab(k.vector(1, 0), k.vector(0, 1)).unwrap();
        assert_eq!(id, FpOperator::identity(k));
        assert_eq!(id.det().value(), 1);
        let swap = g_ab(k.vector(0, 1), k.vector(1, 0)).unwrap();
        assert_eq!(swap.det().value(), 4);
        let g = g_ab(k.vector(1, 1), k.vector(2, 1)).unwrap();
        assert_eq!(g.det().value(), 4);
        assert_eq!(g.apply(k.vector(1, 0)).unwrap(), k.vector(1, 1));
        assert_eq!(g.apply(k.vector(0, 1)).unwrap(), k.vector(2, 1));
        assert!(matches!(
            g_ab(k.vector(1, 2), k.vector(2, 4)),
            Err(AlgebraError::Collinear(..))
        ));
    }

    #[test]
    fn collinear_examples() {
        let k = f(5);
        assert!(collinear(k.vector(1, 2), k.vector(2, 4)).unwrap());
        assert!(!collinear(k.vector(1, 0), k.vector(0, 1)).unwrap());
        assert!(collinear(k.vector(1, 3), k.vector(2, 1)).unwrap());
        assert!(collinear(k.vector(0, 0), k.vector(3, 1)).unwrap());
        let other = f(7).vector(1, 0);
        assert_eq!(
            collinear(k.vector(1, 0), other),
            Err(AlgebraError::ModulusMismatch(5, 7))
        );
    }

    #[test]
    fn group_axioms_exhaustive_at_5() {
        let k = f(5);
        let id = FpOperator::identity(k);
        let ops = gl2_enumerate(k);
        for g in &ops {
            assert!(g.is_invertible());
            let inv = g.inverse().unwrap();
            assert_eq!(g.compose(&inv).unwrap(), id);
            assert_eq!(inv.compose(g).unwrap(), id);
        }
        for (i, g) in ops.iter().enumerate().step_by(7) {
            let h = &ops[(i * 31 + 11) % ops.len()];
            assert_eq!(g.compose(h).unwrap().det(), g.det() * h.det());
        }
        let v = k.vector(3, 2);
        assert_eq!(id.apply(v).unwrap(), v);
        assert_eq!(
            FpOperator::from_rows(k, 1, 2, 2, 4).inverse(),
            Err(AlgebraError::Singular)
        );
    }

    #[test]
    fn g_ab_equivariance_and_antisymmetry() {
        for p in [3u32, 5] {
            let k = f(p);
            let vecs: Vec<FpVector> = (1..p * p).map(|i| FpVector::from_index(k, i)).collect();
            let ops = gl2_enumerate(k);
            for &a in &vecs {
                for &b in &vecs {
                    if collinear(a, b).unwrap() {
                        continue;
                    }
                    let gab = g_ab(a, b).unwrap();
                    assert_eq!(gab.det(), -g_ab(b, a).unwrap().det());
                    for h in ops.iter().step_by(if p == 3 { 1 } else { 13 }) {
                        let lhs = g_ab(h.apply(a).unwrap(), h.apply(b).unwrap()).unwrap();
                        assert_eq!(lhs, h.compose(&gab).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_log_table() {
        for p in [5u32, 7, 11, 13] {
            let k = f(p);
            let logs = k.log_table();
            let g = k.generator();
            for x in 1..p {
                assert_eq!(g.pow(logs[x as usize] as i64).value(), x);
            }
        }
    }

    #[test]
    fn field_ops() {
        let k = f(7);
        assert_eq!((k.elem(3) * k.elem(5)).value(), 1);
        assert_eq!(k.elem(-1).value(), 6);
        assert_eq!(k.elem(3).try_pow(-1).unwrap().value(), 5);
        assert!(k.zero().inverse().is_err());
        assert_eq!(
            k.elem(1).checked_add(f(5).elem(1)),
            Err(AlgebraError::ModulusMismatch(7, 5))
        );
    }

    #[test]
    fn xor_vectors() {
        assert!(XorVector::new(8, 3).is_err());
        let a = XorVector::new(0b101, 3).unwrap();
        let b = XorVector::new(0b110, 3).unwrap();
        assert_eq!((a ^ b).bits(), 0b011);
        assert_eq!(a.to_string(), "101");
    }
}
