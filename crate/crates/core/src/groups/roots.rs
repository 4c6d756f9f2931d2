use serde::Serialize;

use super::matrix::SignedMatrix;
use super::spec::{Family, GroupSpec};
use crate::error::{Error, Result};

/// A positive root `γ = (i, j)` and its basis matrix `E_γ = E_ij + ε(γ) E_{γ'}`
/// with mirror `γ' = (-j, -i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub i: i32,
    pub j: i32,
    /// Matrix positions of `E_ij`.
    pub row: usize,
    pub col: usize,
    /// Matrix positions of `E_{γ'}`.
    pub mirror_row: usize,
    pub mirror_col: usize,
    /// Labels of the blocks containing `i` and `j`.
    pub block_row: i32,
    pub block_col: i32,
    pub sign: i32,
    /// `E_γ` lies in `u`: row and column in different blocks.
    pub crosses: bool,
}

impl Root {
    pub fn mirror(&self) -> (i32, i32) {
        (-self.j, -self.i)
    }

    pub fn is_self_mirror(&self) -> bool {
        self.mirror() == (self.i, self.j)
    }

    pub fn basis_matrix(&self, spec: &GroupSpec) -> SignedMatrix {
        let f = spec.field();
        let mut m = SignedMatrix::unit(spec.dim(), self.row, self.col);
        if !self.is_self_mirror() && self.sign != 0 {
            let v = f.reduce(self.sign as i64);
            m.set(self.mirror_row, self.mirror_col, v);
        }
        m
    }

    pub fn label(&self) -> String {
        format!("({},{})", self.i, self.j)
    }
}

fn is_positive(family: Family, i: i32, j: i32) -> bool {
    match family {
        Family::B => i > j && j > -i,
        Family::C => i > j && j >= -i && j != 0,
        Family::D => i > j && j > -i && j != 0,
    }
}

/// All positive roots, ordered by `i` descending then `j` descending, with
/// `ε(γ)` solved from `E_γ† = -E_γ`.
pub fn root_system(spec: &GroupSpec) -> Result<Vec<Root>> {
    let f = spec.field();
    let mut out = Vec::new();
    let idx = spec.indices();
    for &i in &idx {
        if i <= 0 {
            continue;
        }
        for &j in &idx {
            if !is_positive(spec.family(), i, j) {
                continue;
            }
            let (row, col) = (spec.pos_of(i), spec.pos_of(j));
            let (mirror_row, mirror_col) = (spec.pos_of(-j), spec.pos_of(-i));
            let self_mirror = (row, col) == (mirror_row, mirror_col);
            let candidates: &[i32] = if self_mirror { &[0] } else { &[-1, 1] };
            let mut solved = None;
            for &eps in candidates {
                let mut e = SignedMatrix::unit(spec.dim(), row, col);
                if eps != 0 {
                    e.set(mirror_row, mirror_col, f.reduce(eps as i64));
                }
                if spec.dagger(&e) == e.neg(f) {
                    solved = Some(eps);
                    break;
                }
            }
            let sign = solved.ok_or_else(|| {
                Error::internal(format!("no sign makes E({i},{j}) anti-invariant"))
            })?;
            out.push(Root {
                i,
                j,
                row,
                col,
                mirror_row,
                mirror_col,
                block_row: spec.label_of_pos(row),
                block_col: spec.label_of_pos(col),
                sign,
                crosses: spec.segment_of_pos(row) != spec.segment_of_pos(col),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg::rank;

    fn u_roots(spec: &GroupSpec) -> Vec<(i32, i32)> {
        root_system(spec)
            .unwrap()
            .into_iter()
            .filter(|r| r.crosses)
            .map(|r| (r.i, r.j))
            .collect()
    }

    #[test]
    fn borel_b2_and_d2() {
        let b = GroupSpec::borel(Family::B, 2, 3).unwrap();
        assert_eq!(u_roots(&b), vec![(2, 1), (2, 0), (2, -1), (1, 0)]);
        let d = GroupSpec::borel(Family::D, 2, 3).unwrap();
        assert_eq!(u_roots(&d), vec![(2, 1), (2, -1)]);
    }

    #[test]
    fn symplectic_signs() {
        let c = GroupSpec::borel(Family::C, 2, 3).unwrap();
        let roots = root_system(&c).unwrap();
        let long = roots.iter().find(|r| (r.i, r.j) == (2, -2)).unwrap();
        assert_eq!(long.sign, 0);
        let short = roots.iter().find(|r| (r.i, r.j) == (2, 1)).unwrap();
        assert_eq!(short.sign, -1);
        let mixed = roots.iter().find(|r| (r.i, r.j) == (2, -1)).unwrap();
        assert_eq!(mixed.sign, 1);
        assert_eq!(roots.len(), 4);
    }

    #[test]
    fn basis_spans_anti_invariant_upper_space() {
        for spec in [
            GroupSpec::borel(Family::B, 2, 3).unwrap(),
            GroupSpec::borel(Family::C, 2, 3).unwrap(),
            GroupSpec::new(Family::C, 2, 3, &[2, 2]).unwrap(),
            GroupSpec::new(Family::B, 2, 3, &[1, 3, 1]).unwrap(),
            GroupSpec::borel(Family::D, 3, 5).unwrap(),
        ] {
            let f = spec.field();
            let dim = spec.dim();
            let roots: Vec<Root> = root_system(&spec).unwrap().into_iter().filter(|r| r.crosses).collect();
            let vecs: Vec<Vec<u32>> = roots.iter().map(|r| r.basis_matrix(&spec).data().to_vec()).collect();
            assert_eq!(rank(f, &vecs), roots.len());
            // Solve x† = -x on the upper positions directly.
            let upper: Vec<(usize, usize)> = (0..dim)
                .flat_map(|a| (0..dim).map(move |b| (a, b)))
                .filter(|&(a, b)| spec.is_upper(a, b))
                .collect();
            let mut eqs = Vec::new();
            for a in 0..dim {
                for b in 0..dim {
                    let mut row = vec![0u32; upper.len()];
                    for (k, &(c, d)) in upper.iter().enumerate() {
                        let mut e = SignedMatrix::unit(dim, c, d);
                        e = spec.dagger(&e).add(f, &e);
                        row[k] = e.get(a, b);
                    }
                    eqs.push(row);
                }
            }
            let ker = upper.len() - rank(f, &eqs);
            assert_eq!(ker, roots.len(), "{}", spec.describe());
        }
    }
}
