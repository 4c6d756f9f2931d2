use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field of residues modulo an odd prime.
///
/// Elements are passed around as plain `u32` residues in hot loops; the
/// [`FieldElement`] wrapper is used at API boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p > 1 << 15 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    pub fn half(&self) -> u32 {
        (self.p + 1) / 2
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    pub fn smallest_nonsquare(&self) -> u32 {
        (2..self.p).find(|&a| !self.is_square(a)).expect("odd prime has non-squares")
    }

    pub fn primitive_root(&self) -> u32 {
        let order = self.p as u64 - 1;
        let factors: Vec<u64> = (2..=order).filter(|&d| order % d == 0 && is_prime(d)).collect();
        (1..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("prime field has a primitive root")
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            p: self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.p).map(|v| FieldElement { value: v, p: self.p })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        PrimeField { p: self.p }
            .inv(self.value)
            .map(|value| Self { value, p: self.p })
    }

    pub fn pow(self, e: u64) -> Self {
        Self {
            value: PrimeField { p: self.p }.pow(self.value, e),
            p: self.p,
        }
    }

    fn check(self, other: Self) {
        assert_eq!(self.p, other.p, "field elements from different fields");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        Self {
            value: PrimeField { p: self.p }.add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        Self {
            value: PrimeField { p: self.p }.sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        Self {
            value: PrimeField { p: self.p }.mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: PrimeField { p: self.p }.neg(self.value),
            p: self.p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [3u64, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let els: Vec<_> = f.elements().collect();
            let zero = f.element(0);
            let one = f.element(1);
            for &a in &els {
                assert_eq!(a + zero, a);
                assert_eq!(a * one, a);
                assert_eq!(a + (-a), zero);
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), one);
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!((a - b) + b, a);
                    for &c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn squares_and_roots() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.smallest_nonsquare(), 3);
        assert_eq!(f.primitive_root(), 3);
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.smallest_nonsquare(), 2);
        assert_eq!(f.primitive_root(), 2);
        assert_eq!(f.mul(f.half(), 2), 1);
    }
}
