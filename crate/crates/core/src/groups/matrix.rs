use crate::algebra::PrimeField;

/// A square matrix over `F_p` stored by matrix position (row-major).
///
/// Signed-index access goes through [`super::GroupSpec::entry`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMatrix {
    dim: usize,
    data: Vec<u32>,
}

impl SignedMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1)
    }

    pub fn scalar(dim: usize, c: u32) -> Self {
        let mut m = Self::zero(dim);
        for a in 0..dim {
            m.set(a, a, c);
        }
        m
    }

    pub fn unit(dim: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zero(dim);
        m.set(a, b, 1);
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            data.extend_from_slice(r);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.data[a * self.dim + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: u32) {
        self.data[a * self.dim + b] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.dim).map(<[u32]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|a| (0..self.dim).all(|b| self.get(a, b) == u32::from(a == b)))
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &PrimeField, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &PrimeField, c: u32) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, f: &PrimeField) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn mul(&self, f: &PrimeField, other: &Self) -> Self {
        let n = self.dim;
        assert_eq!(n, other.dim);
        let p = f.p() as u64;
        let mut data = vec![0u32; n * n];
        for a in 0..n {
            for c in 0..n {
                let x = self.data[a * n + c] as u64;
                if x == 0 {
                    continue;
                }
                let row = &other.data[c * n..(c + 1) * n];
                let out = &mut data[a * n..(a + 1) * n];
                for (o, &y) in out.iter_mut().zip(row) {
                    *o = ((*o as u64 + x * y as u64) % p) as u32;
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut t = Self::zero(n);
        for a in 0..n {
            for b in 0..n {
                t.set(b, a, self.get(a, b));
            }
        }
        t
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self, f: &PrimeField) -> Option<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col) != 0)?;
            if piv != col {
                for k in 0..n {
                    a.data.swap(piv * n + k, col * n + k);
                    inv.data.swap(piv * n + k, col * n + k);
                }
            }
            let s = f.inv(a.get(col, col)).unwrap();
            for k in 0..n {
                a.set(col, k, f.mul(a.get(col, k), s));
                inv.set(col, k, f.mul(inv.get(col, k), s));
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r != col && c != 0 {
                    for k in 0..n {
                        a.set(r, k, f.sub(a.get(r, k), f.mul(c, a.get(col, k))));
                        inv.set(r, k, f.sub(inv.get(r, k), f.mul(c, inv.get(col, k))));
                    }
                }
            }
        }
        Some(inv)
    }

    /// `(A^k)` for `k ≥ 0`.
    pub fn pow(&self, f: &PrimeField, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            k >>= 1;
        }
        acc
    }

    /// Square sub-block on the position range `r`.
    pub fn block(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Vec<Vec<u32>> {
        r.map(|a| c.clone().map(|b| self.get(a, b)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(5).unwrap();
        let m = SignedMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 2]]);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
        assert!(SignedMatrix::zero(3).inverse(&f).is_none());
    }
}
