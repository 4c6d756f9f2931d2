//! Linear algebra over a prime field: echelon forms, kernels and subspaces.

use super::fp::PrimeField;

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn apply(&self, f: &PrimeField, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.rows];
        self.apply_into(f, v, &mut out);
        out
    }

    pub fn apply_into(&self, f: &PrimeField, v: &[u32], out: &mut [u32]) {
        debug_assert_eq!(v.len(), self.cols);
        let p = f.p() as u64;
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut s = 0u64;
            for (a, b) in row.iter().zip(v) {
                s += (*a as u64) * (*b as u64);
            }
            *o = (s % p) as u32;
        }
    }

    pub fn mul(&self, f: &PrimeField, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let p = f.p() as u64;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = 0u64;
                for k in 0..self.cols {
                    s += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                out.data[i * out.cols + j] = (s % p) as u32;
            }
        }
        out
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rank(f, &rows)
    }
}

/// Reduced row echelon form of `rows` together with the pivot columns.
pub fn rref(f: &PrimeField, rows: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut s = Subspace::zero(rows.first().map_or(0, Vec::len));
    for r in rows {
        s.insert(f, r);
    }
    (s.basis, s.pivots)
}

pub fn rank(f: &PrimeField, rows: &[Vec<u32>]) -> usize {
    rref(f, rows).1.len()
}

/// Basis of `{v : row · v = 0 for every row}` in `F_p^ncols`.
pub fn kernel(f: &PrimeField, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut s = Subspace::zero(ncols);
    for r in rows {
        assert_eq!(r.len(), ncols);
        s.insert(f, r);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !s.pivots.contains(c)).collect();
    free.iter()
        .map(|&c| {
            let mut v = vec![0; ncols];
            v[c] = 1;
            for (row, &piv) in s.basis.iter().zip(&s.pivots) {
                v[piv] = f.neg(row[c]);
            }
            v
        })
        .collect()
}

/// A subspace of `F_p^n` kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(f: &PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they parametrize the quotient space.
    pub fn free_coords(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Replace `v` by the canonical representative of `v + self`
    /// (all pivot coordinates zero).
    pub fn reduce(&self, f: &PrimeField, v: &mut [u32]) {
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    pub fn contains(&self, f: &PrimeField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Add a vector; returns whether the dimension grew.
    pub fn insert(&mut self, f: &PrimeField, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[piv]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.basis.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.basis.insert(at, w);
        true
    }

    /// Vectors orthogonal to the whole subspace under the standard pairing.
    pub fn annihilator(&self, f: &PrimeField) -> Self {
        Self::span(f, self.ambient, &kernel(f, &self.basis, self.ambient))
    }

    pub fn intersect(&self, f: &PrimeField, other: &Self) -> Self {
        let ann = other.annihilator(f);
        // Combinations Σ a_i b_i of our basis killed by every annihilator row.
        let rows: Vec<Vec<u32>> = ann
            .basis
            .iter()
            .map(|c| {
                self.basis
                    .iter()
                    .map(|b| dot(f, b, c))
                    .collect()
            })
            .collect();
        let coeffs = if rows.is_empty() {
            (0..self.dim())
                .map(|i| {
                    let mut v = vec![0; self.dim()];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            kernel(f, &rows, self.dim())
        };
        let vectors: Vec<Vec<u32>> = coeffs
            .iter()
            .map(|a| {
                let mut v = vec![0; self.ambient];
                for (c, b) in a.iter().zip(&self.basis) {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(*c, y));
                    }
                }
                v
            })
            .collect();
        Self::span(f, self.ambient, &vectors)
    }

    pub fn is_subspace_of(&self, f: &PrimeField, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(f, b))
    }
}

pub fn dot(f: &PrimeField, a: &[u32], b: &[u32]) -> u32 {
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (s % f.p() as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 2, 1, 0]];
        assert_eq!(rank(&f, &rows), 2);
        let k = kernel(&f, &rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert_eq!(dot(&f, r, v), 0);
            }
        }
    }

    #[test]
    fn intersection_dimension() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let b = Subspace::span(&f, 4, &[vec![0, 1, 1, 1], vec![0, 0, 0, 1], vec![1, 0, 0, 0]]);
        let c = a.intersect(&f, &b);
        assert_eq!(c.dim(), 2);
        assert!(c.is_subspace_of(&f, &a) && c.is_subspace_of(&f, &b));
        assert_eq!(a.intersect(&f, &Subspace::zero(4)).dim(), 0);
        assert_eq!(a.intersect(&f, &Subspace::full(4)), a);
    }

    #[test]
    fn reduction_is_canonical() {
        let f = PrimeField::new(3).unwrap();
        let s = Subspace::span(&f, 3, &[vec![1, 1, 0]]);
        let mut v = vec![2, 0, 1];
        let mut w = vec![0, 1, 1];
        s.reduce(&f, &mut v);
        s.reduce(&f, &mut w);
        assert_eq!(v, w);
        assert_eq!(s.free_coords(), vec![1, 2]);
    }
}

/// Index of a coordinate vector, base `p` with the first coordinate most
/// significant, so index order is lexicographic order.
#[inline]
pub fn encode_vector(p: u32, v: &[u32]) -> u32 {
    v.iter().fold(0u32, |acc, &c| acc * p + c)
}

#[inline]
pub fn decode_vector(p: u32, dim: usize, mut idx: u32) -> Vec<u32> {
    let mut v = vec![0; dim];
    for c in v.iter_mut().rev() {
        *c = idx % p;
        idx /= p;
    }
    v
}

#[cfg(test)]
mod encoding_tests {
    use super::*;

    #[test]
    fn encoding_is_lexicographic() {
        let mut prev = None;
        for i in 0..27 {
            let v = decode_vector(3, 3, i);
            assert_eq!(encode_vector(3, &v), i);
            if let Some(p) = prev {
                assert!(p < v);
            }
            prev = Some(v);
        }
    }
}
