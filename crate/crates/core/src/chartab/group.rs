use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

/// A subgroup with its own table and the embedding into the parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub table: GroupTable,
    /// Parent element of each subgroup element, increasing.
    pub members: Vec<u32>,
    position: HashMap<u32, u32>,
}

impl Subgroup {
    pub fn local(&self, parent_elem: u32) -> Option<u32> {
        self.position.get(&parent_elem).copied()
    }

    pub fn contains(&self, parent_elem: u32) -> bool {
        self.position.contains_key(&parent_elem)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}

impl GroupTable {
    pub fn from_elements<T: Eq + Hash + Clone>(elems: &[T], op: impl Fn(&T, &T) -> T) -> Result<Self> {
        let index: HashMap<&T, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        if index.len() != elems.len() {
            return Err(Error::usage("group elements are not distinct"));
        }
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                let c = op(a, b);
                let &k = index
                    .get(&c)
                    .ok_or_else(|| Error::usage("element list is not closed under the product"))?;
                mul.push(k);
            }
        }
        Self::from_table(n, mul)
    }

    pub fn from_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::usage("malformed multiplication table"));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x))
            .ok_or_else(|| Error::usage("no identity element"))? as u32;
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == identity {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::usage("element without inverse"));
            }
        }
        Ok(Self {
            order,
            mul,
            inv,
            identity,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        (0..self.order as u32).fold(1, |e, a| e.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn subgroup(&self, members: &[u32]) -> Result<Subgroup> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let position: HashMap<u32, u32> = members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let k = members.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let c = self.mul(a, b);
                mul.push(*position.get(&c).ok_or_else(|| Error::usage("subset is not a subgroup"))?);
            }
        }
        Ok(Subgroup {
            table: GroupTable::from_table(k, mul)?,
            members,
            position,
        })
    }

    /// `sub` is closed under conjugation by every element of `by`.
    pub fn normalizes(&self, by: &[u32], sub: &Subgroup) -> bool {
        by.iter().all(|&g| sub.members.iter().all(|&x| sub.contains(self.conj(g, x))))
    }
}
