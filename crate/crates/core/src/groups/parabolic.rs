use std::collections::HashMap;

use rayon::prelude::*;

use super::levi::enumerate_levi;
use super::matrix::SignedMatrix;
use super::roots::{root_system, Root};
use super::spec::GroupSpec;
use super::springer::{springer_inv, springer_map};
use crate::algebra::linalg::{decode_vector, encode_vector, FpMatrix};
use crate::algebra::PrimeField;
use crate::chartab::GroupTable;
use crate::error::{Error, Result};
use crate::session::Guards;

/// An element `r · f⁻¹(x)` of `G`, encoded as `r · |u| + x` with `r` a Levi
/// index and `x` an index into `u`.
pub type GElem = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupTag {
    Ub,
    Hb,
    Lb,
    L,
}

/// The parabolic subgroup `G = L ⋉ U` with everything needed to compute in it:
/// the Levi factor as a group table, `U` realized through the Cayley map on
/// `u`, and the action of `L` on `u`.
pub struct Parabolic {
    spec: GroupSpec,
    roots: Vec<Root>,
    u_roots: Vec<Root>,
    uc_positions: Vec<(usize, usize)>,
    uc_lookup: Vec<u32>,
    levi: Vec<SignedMatrix>,
    levi_index: HashMap<SignedMatrix, u32>,
    levi_table: GroupTable,
    u_size: usize,
    unipotent: Vec<SignedMatrix>,
    ad: Vec<u32>,
    umul: Vec<u32>,
    uneg: Vec<u32>,
}

impl Parabolic {
    pub fn new(spec: GroupSpec, guards: &Guards) -> Result<Self> {
        let f = *spec.field();
        let roots = root_system(&spec)?;
        let u_roots: Vec<Root> = roots.iter().filter(|r| r.crosses).copied().collect();
        let dim = spec.dim();
        let mut uc_positions = Vec::new();
        let mut uc_lookup = vec![u32::MAX; dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                if spec.is_upper(a, b) {
                    uc_lookup[a * dim + b] = uc_positions.len() as u32;
                    uc_positions.push((a, b));
                }
            }
        }

        let u_size = (f.p() as u128).pow(u_roots.len() as u32);
        if u_size > guards.space {
            return Err(Error::Guard {
                what: "unipotent radical",
                needed: u_size,
                limit: guards.space,
            });
        }
        if u_size * u_size > guards.table {
            return Err(Error::Guard {
                what: "multiplication table of U",
                needed: u_size * u_size,
                limit: guards.table,
            });
        }
        let u_size = u_size as usize;

        let levi = enumerate_levi(&spec, guards.levi)?;
        if levi.len() > guards.group {
            return Err(Error::Guard {
                what: "Levi factor table",
                needed: levi.len() as u128,
                limit: guards.group as u128,
            });
        }
        let levi_index: HashMap<SignedMatrix, u32> =
            levi.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let levi_table = GroupTable::from_elements(&levi, |a, b| a.mul(&f, b))?;

        let mut par = Self {
            spec,
            roots,
            u_roots,
            uc_positions,
            uc_lookup,
            levi,
            levi_index,
            levi_table,
            u_size,
            unipotent: Vec::new(),
            ad: Vec::new(),
            umul: Vec::new(),
            uneg: Vec::new(),
        };

        par.unipotent = (0..u_size as u32)
            .into_par_iter()
            .map(|x| springer_inv(&par.spec, &par.u_matrix(&par.decode_u(x))))
            .collect::<Result<Vec<_>>>()?;

        let du = par.dim_u();
        let mut ad = Vec::with_capacity(par.levi.len() * u_size);
        for r in 0..par.levi.len() {
            let m = par.ad_map(r as u32);
            for x in 0..u_size as u32 {
                ad.push(encode_vector(f.p(), &m.apply(&f, &decode_vector(f.p(), du, x))));
            }
        }
        par.ad = ad;
        par.uneg = (0..u_size as u32)
            .map(|x| {
                let v: Vec<u32> = par.decode_u(x).iter().map(|&c| f.neg(c)).collect();
                par.encode_u(&v)
            })
            .collect();

        let rows: Vec<Vec<u32>> = (0..u_size)
            .into_par_iter()
            .map(|x| {
                (0..u_size)
                    .map(|y| {
                        let prod = par.unipotent[x].mul(&f, &par.unipotent[y]);
                        let z = springer_map(&par.spec, &prod)?;
                        let coords = par.u_coords(&z);
                        if par.u_matrix(&coords) != z {
                            return Err(Error::internal("product of unipotent elements left U"));
                        }
                        Ok(par.encode_u(&coords))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        par.umul = rows.concat();
        Ok(par)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn field(&self) -> &PrimeField {
        self.spec.field()
    }

    pub fn p(&self) -> u32 {
        self.spec.p()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Roots `γ` with `E_γ ∈ u`, in coordinate order.
    pub fn u_roots(&self) -> &[Root] {
        &self.u_roots
    }

    pub fn dim_u(&self) -> usize {
        self.u_roots.len()
    }

    pub fn u_size(&self) -> usize {
        self.u_size
    }

    /// Matrix positions forming the basis `E_ab` of `Uc`.
    pub fn uc_positions(&self) -> &[(usize, usize)] {
        &self.uc_positions
    }

    pub fn uc_dim(&self) -> usize {
        self.uc_positions.len()
    }

    pub fn uc_index(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.uc_lookup[a * self.spec.dim() + b];
        (i != u32::MAX).then_some(i as usize)
    }

    /// Basis positions of `Hc`: rows in blocks with non-negative label.
    pub fn hc_mask(&self) -> Vec<bool> {
        self.uc_positions.iter().map(|&(a, _)| self.spec.label_of_pos(a) >= 0).collect()
    }

    pub fn encode_u(&self, coords: &[u32]) -> u32 {
        encode_vector(self.p(), coords)
    }

    pub fn decode_u(&self, x: u32) -> Vec<u32> {
        decode_vector(self.p(), self.dim_u(), x)
    }

    /// `Σ c_γ E_γ`
    pub fn u_matrix(&self, coords: &[u32]) -> SignedMatrix {
        let f = self.field();
        let mut m = SignedMatrix::zero(self.spec.dim());
        for (r, &c) in self.u_roots.iter().zip(coords) {
            if c == 0 {
                continue;
            }
            m.set(r.row, r.col, f.add(m.get(r.row, r.col), c));
            if !r.is_self_mirror() {
                let v = f.mul(c, f.reduce(r.sign as i64));
                m.set(r.mirror_row, r.mirror_col, f.add(m.get(r.mirror_row, r.mirror_col), v));
            }
        }
        m
    }

    /// Coordinates of an element of `u` (read off at the root positions).
    pub fn u_coords(&self, m: &SignedMatrix) -> Vec<u32> {
        self.u_roots.iter().map(|r| m.get(r.row, r.col)).collect()
    }

    pub fn uc_matrix(&self, coords: &[u32]) -> SignedMatrix {
        let mut m = SignedMatrix::zero(self.spec.dim());
        for (&(a, b), &c) in self.uc_positions.iter().zip(coords) {
            m.set(a, b, c);
        }
        m
    }

    pub fn uc_coords(&self, m: &SignedMatrix) -> Vec<u32> {
        self.uc_positions.iter().map(|&(a, b)| m.get(a, b)).collect()
    }

    /// `f⁻¹(x)` for the element of `u` with index `x`.
    pub fn unipotent(&self, x: u32) -> &SignedMatrix {
        &self.unipotent[x as usize]
    }

    pub fn levi(&self) -> &[SignedMatrix] {
        &self.levi
    }

    pub fn levi_table(&self) -> &GroupTable {
        &self.levi_table
    }

    pub fn levi_index(&self, m: &SignedMatrix) -> Option<u32> {
        self.levi_index.get(m).copied()
    }

    /// Linear map `x ↦ r x r⁻¹` on coordinates of `u`.
    pub fn ad_map(&self, r: u32) -> FpMatrix {
        let f = self.field();
        let g = &self.levi[r as usize];
        let gi = &self.levi[self.levi_table.inv(r) as usize];
        self.linear_map_on_u(|x| g.mul(f, x).mul(f, gi))
    }

    /// Matrix of a linear endomorphism of `u` given on matrices.
    pub fn linear_map_on_u(&self, map: impl Fn(&SignedMatrix) -> SignedMatrix) -> FpMatrix {
        let d = self.dim_u();
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|k| {
                let mut e = vec![0; d];
                e[k] = 1;
                self.u_coords(&map(&self.u_matrix(&e)))
            })
            .collect();
        FpMatrix::from_columns(d, &cols)
    }

    /// Matrix of a linear endomorphism of `Uc` given on matrices.
    pub fn linear_map_on_uc(&self, map: impl Fn(&SignedMatrix) -> SignedMatrix) -> FpMatrix {
        let d = self.uc_dim();
        let cols: Vec<Vec<u32>> = self
            .uc_positions
            .iter()
            .map(|&(a, b)| self.uc_coords(&map(&SignedMatrix::unit(self.spec.dim(), a, b))))
            .collect();
        FpMatrix::from_columns(d, &cols)
    }

    /// `Ad_r x` on indices.
    #[inline]
    pub fn ad(&self, r: u32, x: u32) -> u32 {
        self.ad[r as usize * self.u_size + x as usize]
    }

    /// Index of `f(f⁻¹(x) f⁻¹(y))`.
    #[inline]
    pub fn umul(&self, x: u32, y: u32) -> u32 {
        self.umul[x as usize * self.u_size + y as usize]
    }

    /// Index of `-x`; `f⁻¹(-x) = f⁻¹(x)⁻¹`.
    #[inline]
    pub fn uneg(&self, x: u32) -> u32 {
        self.uneg[x as usize]
    }

    pub fn g_order(&self) -> usize {
        self.levi.len() * self.u_size
    }

    #[inline]
    pub fn g_encode(&self, r: u32, x: u32) -> GElem {
        r * self.u_size as u32 + x
    }

    #[inline]
    pub fn g_decode(&self, g: GElem) -> (u32, u32) {
        (g / self.u_size as u32, g % self.u_size as u32)
    }

    pub fn g_identity(&self) -> GElem {
        self.g_encode(self.levi_table.identity(), 0)
    }

    /// `(r₁, x₁)(r₂, x₂) = (r₁r₂, Ad_{r₂⁻¹}(x₁) ∘ x₂)`
    #[inline]
    pub fn g_mul(&self, a: GElem, b: GElem) -> GElem {
        let (r1, x1) = self.g_decode(a);
        let (r2, x2) = self.g_decode(b);
        let lt = &self.levi_table;
        self.g_encode(lt.mul(r1, r2), self.umul(self.ad(lt.inv(r2), x1), x2))
    }

    /// `(r, x)⁻¹ = (r⁻¹, Ad_r(-x))`
    #[inline]
    pub fn g_inv(&self, a: GElem) -> GElem {
        let (r, x) = self.g_decode(a);
        self.g_encode(self.levi_table.inv(r), self.ad(r, self.uneg(x)))
    }

    pub fn g_matrix(&self, g: GElem) -> SignedMatrix {
        let (r, x) = self.g_decode(g);
        self.levi[r as usize].mul(self.field(), &self.unipotent[x as usize])
    }

    /// Levi decomposition `g = r u` of a matrix of `G`.
    pub fn locate(&self, g: &SignedMatrix) -> Result<GElem> {
        let dim = self.spec.dim();
        let mut r = SignedMatrix::zero(dim);
        for a in 0..dim {
            for b in 0..dim {
                let v = g.get(a, b);
                if self.spec.is_diagonal_block(a, b) {
                    r.set(a, b, v);
                } else if v != 0 && !self.spec.is_upper(a, b) {
                    return Err(Error::usage("matrix is not block upper triangular"));
                }
            }
        }
        let ri = self.levi_index(&r).ok_or_else(|| Error::usage("block diagonal part is not in L"))?;
        let f = self.field();
        let rinv = &self.levi[self.levi_table.inv(ri) as usize];
        let x = springer_map(&self.spec, &rinv.mul(f, g))?;
        let coords = self.u_coords(&x);
        if self.u_matrix(&coords) != x {
            return Err(Error::usage("matrix does not lie in G"));
        }
        Ok(self.g_encode(ri, self.encode_u(&coords)))
    }

    /// A generating set of the named subgroup.
    pub fn generators(&self, tag: SubgroupTag) -> Vec<SignedMatrix> {
        let dim = self.spec.dim();
        let f = self.field();
        let one = SignedMatrix::identity(dim);
        let transvection = |a: usize, b: usize| {
            let mut m = one.clone();
            m.set(a, b, 1);
            m
        };
        match tag {
            SubgroupTag::Ub => self.uc_positions.iter().map(|&(a, b)| transvection(a, b)).collect(),
            SubgroupTag::Hb => self
                .uc_positions
                .iter()
                .zip(self.hc_mask())
                .filter(|(_, h)| *h)
                .map(|(&(a, b), _)| transvection(a, b))
                .collect(),
            SubgroupTag::Lb => {
                let omega = f.primitive_root();
                let mut gens = Vec::new();
                for seg in self.spec.segments() {
                    for a in seg.positions() {
                        for b in seg.positions() {
                            if a != b {
                                gens.push(transvection(a, b));
                            }
                        }
                    }
                    let mut d = one.clone();
                    d.set(seg.start, seg.start, omega);
                    gens.push(d);
                }
                gens
            }
            SubgroupTag::L => self.levi.clone(),
        }
    }
}
