use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::SignedMatrix;
use crate::algebra::PrimeField;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::usage(format!("unknown family `{other}`, expected B, C or D"))),
        }
    }
}

/// A block `I_k` of the decomposition, in matrix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub label: i32,
    pub start: usize,
    pub size: usize,
}

impl Segment {
    pub fn positions(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.size
    }
}

/// Family, rank, prime and symmetric block decomposition of the index set.
///
/// Rows and columns are numbered `n > … > 1 > (0) > -1 > … > -n`; matrix
/// position 0 carries index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    family: Family,
    n: usize,
    field: PrimeField,
    blocks: Vec<usize>,
    segments: Vec<Segment>,
    seg_of_pos: Vec<usize>,
}

impl GroupSpec {
    /// `blocks` lists every block size `n_ℓ, …, n_0, …, n_{-ℓ}` in matrix order.
    pub fn new(family: Family, n: usize, p: u64, blocks: &[usize]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::usage("rank must be at least 1"));
        }
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::usage("block sizes must be positive"));
        }
        let nb = blocks.len();
        if (0..nb).any(|t| blocks[t] != blocks[nb - 1 - t]) {
            return Err(Error::AsymmetricBlocks(blocks.to_vec()));
        }
        let middle = if nb % 2 == 1 { blocks[nb / 2] } else { 0 };
        let parity_ok = match family {
            Family::B => middle % 2 == 1,
            Family::C | Family::D => middle % 2 == 0,
        };
        if !parity_ok {
            return Err(Error::MiddleParity {
                family: family.letter(),
                size: middle,
            });
        }
        let dim = match family {
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        };
        let sum: usize = blocks.iter().sum();
        if sum != dim {
            return Err(Error::BlockSum { sum, expected: dim });
        }
        let ell = nb / 2;
        let mut segments = Vec::with_capacity(nb);
        let mut seg_of_pos = Vec::with_capacity(dim);
        let mut start = 0;
        for (t, &size) in blocks.iter().enumerate() {
            let label = if t < ell {
                (ell - t) as i32
            } else if nb % 2 == 1 && t == ell {
                0
            } else {
                -((t + 1 - (nb - ell)) as i32)
            };
            segments.push(Segment { label, start, size });
            seg_of_pos.extend(std::iter::repeat(t).take(size));
            start += size;
        }
        Ok(Self {
            family,
            n,
            field,
            blocks: blocks.to_vec(),
            segments,
            seg_of_pos,
        })
    }

    /// Blocks given as `n_ℓ, …, n_1` followed by the middle size `n_0`,
    /// which may be omitted for types C and D when it is zero.
    pub fn from_half_blocks(family: Family, n: usize, p: u64, half: &[usize]) -> Result<Self> {
        if half.is_empty() {
            return Err(Error::usage("no block sizes given"));
        }
        let dim = match family {
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        };
        let twice: usize = 2 * half.iter().sum::<usize>();
        let (outer, middle) = if family != Family::B && twice == dim {
            (half, 0)
        } else {
            (&half[..half.len() - 1], half[half.len() - 1])
        };
        let mut blocks: Vec<usize> = outer.to_vec();
        if middle > 0 {
            blocks.push(middle);
        } else if family == Family::B {
            return Err(Error::MiddleParity { family: 'B', size: 0 });
        }
        blocks.extend(outer.iter().rev());
        Self::new(family, n, p, &blocks)
    }

    /// The Borel decomposition into singletons (middle block of size 1 for type B).
    pub fn borel(family: Family, n: usize, p: u64) -> Result<Self> {
        let dim = if family == Family::B { 2 * n + 1 } else { 2 * n };
        Self::new(family, n, p, &vec![1; dim])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Matrix size `N`.
    pub fn dim(&self) -> usize {
        self.seg_of_pos.len()
    }

    pub fn has_middle(&self) -> bool {
        self.segments.len() % 2 == 1
    }

    pub fn segment_of_pos(&self, pos: usize) -> usize {
        self.seg_of_pos[pos]
    }

    /// Segment index carrying the given label.
    pub fn segment_by_label(&self, label: i32) -> Option<usize> {
        self.segments.iter().position(|s| s.label == label)
    }

    pub fn label_of_pos(&self, pos: usize) -> i32 {
        self.segments[self.seg_of_pos[pos]].label
    }

    /// Signed index at a matrix position.
    pub fn index_at(&self, pos: usize) -> i32 {
        let n = self.n as i32;
        let pos = pos as i32;
        match self.family {
            Family::B => n - pos,
            _ if pos < n => n - pos,
            _ => n - pos - 1,
        }
    }

    /// Matrix position of a signed index.
    pub fn pos_of(&self, idx: i32) -> usize {
        let n = self.n as i32;
        assert!(idx.abs() <= n, "index {idx} out of range");
        match self.family {
            Family::B => (n - idx) as usize,
            _ => {
                assert!(idx != 0, "index 0 only exists for type B");
                if idx > 0 {
                    (n - idx) as usize
                } else {
                    (n - idx - 1) as usize
                }
            }
        }
    }

    /// All signed indices from `n` down to `-n`.
    pub fn indices(&self) -> Vec<i32> {
        (0..self.dim()).map(|p| self.index_at(p)).collect()
    }

    /// Entry at signed indices `(i, j)`.
    pub fn entry(&self, m: &SignedMatrix, i: i32, j: i32) -> u32 {
        m.get(self.pos_of(i), self.pos_of(j))
    }

    /// Position `(a, b)` lies in the block-strictly-upper space `Uc`.
    pub fn is_upper(&self, a: usize, b: usize) -> bool {
        self.seg_of_pos[a] < self.seg_of_pos[b]
    }

    /// Position `(a, b)` lies in a diagonal block.
    pub fn is_diagonal_block(&self, a: usize, b: usize) -> bool {
        self.seg_of_pos[a] == self.seg_of_pos[b]
    }

    /// Sign `s(a, b)` with `(X†)_{ab} = s(a, b) · X_{N-1-b, N-1-a}`.
    ///
    /// For type C the involution is `X ↦ J⁻¹ Xᵗ J` where `J` has the
    /// anti-diagonal identity in its upper right block and its negative in
    /// the lower left one.
    #[inline]
    pub fn dagger_sign(&self, a: usize, b: usize) -> bool {
        match self.family {
            Family::B | Family::D => true,
            Family::C => {
                let n = self.n;
                let sa = a < n;
                let sb = self.dim() - 1 - b < n;
                // -s_a s_{N-1-b}
                sa != sb
            }
        }
    }

    pub fn dagger(&self, x: &SignedMatrix) -> SignedMatrix {
        let dim = self.dim();
        let f = &self.field;
        let mut out = SignedMatrix::zero(dim);
        for a in 0..dim {
            for b in 0..dim {
                let v = x.get(dim - 1 - b, dim - 1 - a);
                out.set(a, b, if self.dagger_sign(a, b) { v } else { f.neg(v) });
            }
        }
        out
    }

    /// The Gram matrix `J` of the invariant form (`I_N` anti-diagonal for B, D).
    pub fn form_matrix(&self) -> SignedMatrix {
        let dim = self.dim();
        let mut j = SignedMatrix::zero(dim);
        for a in 0..dim {
            let v = match self.family {
                Family::C if a >= self.n => self.field.neg(1),
                _ => 1,
            };
            j.set(a, dim - 1 - a, v);
        }
        j
    }

    /// `g ∈ Gb` (block upper triangular) and `g† g = 1`.
    pub fn is_in_group(&self, g: &SignedMatrix) -> bool {
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                if self.seg_of_pos[a] > self.seg_of_pos[b] && g.get(a, b) != 0 {
                    return false;
                }
            }
        }
        self.dagger(g).mul(&self.field, g).is_identity()
    }

    pub fn describe(&self) -> String {
        format!(
            "{}{} q={} blocks={}",
            self.family,
            self.n,
            self.p(),
            self.blocks
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_errors_are_distinct() {
        assert!(matches!(GroupSpec::new(Family::B, 2, 3, &[1, 2, 1]), Err(Error::MiddleParity { .. })));
        assert!(matches!(GroupSpec::new(Family::B, 2, 3, &[1, 2, 2]), Err(Error::AsymmetricBlocks(_))));
        assert!(matches!(GroupSpec::new(Family::C, 2, 4, &[2, 2]), Err(Error::NotOddPrime(4))));
        assert!(matches!(GroupSpec::new(Family::C, 2, 2, &[2, 2]), Err(Error::NotOddPrime(2))));
        assert!(matches!(GroupSpec::new(Family::C, 2, 3, &[1, 1]), Err(Error::BlockSum { .. })));
        assert!(matches!(GroupSpec::new(Family::D, 2, 3, &[1, 1, 1, 1, 1]), Err(Error::MiddleParity { .. })));
    }

    #[test]
    fn borel_b2_segments() {
        let s = GroupSpec::new(Family::B, 2, 3, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(s.dim(), 5);
        let labels: Vec<i32> = s.segments().iter().map(|g| g.label).collect();
        assert_eq!(labels, vec![2, 1, 0, -1, -2]);
        assert_eq!(s.indices(), vec![2, 1, 0, -1, -2]);
    }

    #[test]
    fn half_block_notation() {
        let c = GroupSpec::from_half_blocks(Family::C, 2, 3, &[2]).unwrap();
        assert_eq!(c.blocks(), &[2, 2]);
        assert!(!c.has_middle());
        let c = GroupSpec::from_half_blocks(Family::C, 2, 3, &[1, 1]).unwrap();
        assert_eq!(c.blocks(), &[1, 1, 1, 1]);
        let b = GroupSpec::from_half_blocks(Family::B, 2, 3, &[1, 3]).unwrap();
        assert_eq!(b.blocks(), &[1, 3, 1]);
        let b = GroupSpec::from_half_blocks(Family::B, 2, 3, &[1, 1, 1]).unwrap();
        assert_eq!(b.blocks(), &[1, 1, 1, 1, 1]);
        let labels: Vec<i32> = c.segments().iter().map(|g| g.label).collect();
        assert_eq!(labels, vec![2, 1, -1, -2]);
    }

    #[test]
    fn signed_positions_roundtrip() {
        for (fam, n) in [(Family::B, 3), (Family::C, 3), (Family::D, 2)] {
            let s = GroupSpec::borel(fam, n, 3).unwrap();
            for pos in 0..s.dim() {
                assert_eq!(s.pos_of(s.index_at(pos)), pos);
            }
        }
    }
}
