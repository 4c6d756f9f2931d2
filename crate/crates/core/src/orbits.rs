//! Orbits of linear group actions on the coordinate spaces `u`, `u*` and
//! `Uc*`, given by generator matrices. Points are coordinate vectors
//! encoded as integers in lexicographic order.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::linalg::{decode_vector, encode_vector, FpMatrix, Subspace};
use crate::algebra::PrimeField;
use crate::error::{Error, Result};
use crate::groups::{Parabolic, SignedMatrix};

/// A linear action on `F_p^dim` given by the matrices of its generators.
#[derive(Clone, Debug)]
pub struct Action {
    pub label: String,
    pub field: PrimeField,
    pub dim: usize,
    pub gens: Vec<FpMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Sorted point indices.
    pub points: Vec<u32>,
    /// The lexicographically smallest point.
    pub representative: u32,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.points.binary_search(&x).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub orbits: Vec<Orbit>,
    pub orbit_of: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerMode {
    Setwise,
    Pointwise,
}

impl Action {
    pub fn new(label: impl Into<String>, field: PrimeField, dim: usize, gens: Vec<FpMatrix>) -> Self {
        Self {
            label: label.into(),
            field,
            dim,
            gens,
        }
    }

    pub fn space_size(&self) -> u128 {
        (self.field.p() as u128).pow(self.dim as u32)
    }

    pub fn encode(&self, v: &[u32]) -> u32 {
        encode_vector(self.field.p(), v)
    }

    pub fn decode(&self, x: u32) -> Vec<u32> {
        decode_vector(self.field.p(), self.dim, x)
    }

    pub fn apply(&self, g: usize, x: u32) -> u32 {
        self.encode(&self.gens[g].apply(&self.field, &self.decode(x)))
    }

    /// Generator tables `perm[g][x]`.
    pub fn permutations(&self, limit: u128) -> Result<Vec<Vec<u32>>> {
        let size = self.space_size();
        if size > limit {
            return Err(Error::Guard {
                what: "orbit space",
                needed: size,
                limit,
            });
        }
        use rayon::prelude::*;
        Ok(self
            .gens
            .par_iter()
            .map(|m| {
                (0..size as u32)
                    .map(|x| self.encode(&m.apply(&self.field, &self.decode(x))))
                    .collect()
            })
            .collect())
    }

    /// Every generator is invertible, so it permutes the space.
    pub fn is_bijective(&self) -> bool {
        self.gens.iter().all(|g| g.rank(&self.field) == self.dim)
    }
}

pub fn orbit_closure(action: &Action, seed: u32) -> Orbit {
    let mut seen = HashSet::new();
    seen.insert(seed);
    let mut queue = vec![seed];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let v = action.decode(x);
        for g in &action.gens {
            let y = action.encode(&g.apply(&action.field, &v));
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    Orbit {
        representative: queue[0],
        points: queue,
    }
}

pub fn partition_orbits(action: &Action, limit: u128) -> Result<OrbitPartition> {
    let perms = action.permutations(limit)?;
    let size = action.space_size() as usize;
    let (classes, orbit_of) = crate::chartab::orbit_partition(size, perms.len(), |g, x| perms[g][x as usize]);
    Ok(OrbitPartition {
        orbits: classes
            .into_iter()
            .map(|points| Orbit {
                representative: points[0],
                points,
            })
            .collect(),
        orbit_of,
    })
}

/// Elements `h` of `L` (given by their matrices on the orbit's space) that
/// preserve the orbit as a set or fix each of its points.
pub fn stabilizer_in_l(
    field: &PrimeField,
    dim: usize,
    orbit: &Orbit,
    maps: &[FpMatrix],
    mode: StabilizerMode,
) -> Vec<u32> {
    let p = field.p();
    let points: Vec<Vec<u32>> = orbit.points.iter().map(|&x| decode_vector(p, dim, x)).collect();
    maps.iter()
        .enumerate()
        .filter(|(_, m)| {
            points.iter().zip(&orbit.points).all(|(v, &x)| {
                let y = encode_vector(p, &m.apply(field, v));
                match mode {
                    StabilizerMode::Pointwise => y == x,
                    StabilizerMode::Setwise => orbit.contains(y),
                }
            })
        })
        .map(|(h, _)| h as u32)
        .collect()
}

/// Induced action on `F_p^dim / sub`, in the coordinates not used as pivots.
pub fn quotient_action(action: &Action, sub: &Subspace) -> Result<Action> {
    let f = &action.field;
    for g in &action.gens {
        for b in sub.basis() {
            if !sub.contains(f, &g.apply(f, b)) {
                return Err(Error::internal(format!("subspace is not invariant under {}", action.label)));
            }
        }
    }
    let free = sub.free_coords();
    let gens = action
        .gens
        .iter()
        .map(|g| {
            let cols: Vec<Vec<u32>> = free
                .iter()
                .map(|&j| {
                    let mut e = vec![0; action.dim];
                    e[j] = 1;
                    let mut img = g.apply(f, &e);
                    sub.reduce(f, &mut img);
                    free.iter().map(|&i| img[i]).collect()
                })
                .collect();
            FpMatrix::from_columns(free.len(), &cols)
        })
        .collect();
    Ok(Action::new(format!("{} mod subspace", action.label), *f, free.len(), gens))
}

/// Orbits on the quotient space; each point is the index of the canonical
/// coset representative restricted to the free coordinates.
pub fn quotient_orbits(action: &Action, sub: &Subspace, limit: u128) -> Result<OrbitPartition> {
    partition_orbits(&quotient_action(action, sub)?, limit)
}

/// `x ↦ g x g†` on `u`.
pub fn dot_action_on_u(par: &Parabolic, label: &str, gens: &[SignedMatrix]) -> Action {
    let f = *par.field();
    let spec = par.spec();
    let mats = gens
        .iter()
        .map(|g| {
            let gd = spec.dagger(g);
            par.linear_map_on_u(|x| g.mul(&f, x).mul(&f, &gd))
        })
        .collect();
    Action::new(label, f, par.dim_u(), mats)
}

/// `(g·λ)(x) = λ(g† x g)` on `u*`.
pub fn dot_action_on_dual(par: &Parabolic, label: &str, gens: &[SignedMatrix]) -> Action {
    let f = *par.field();
    let spec = par.spec();
    let mats = gens
        .iter()
        .map(|g| {
            let gd = spec.dagger(g);
            par.linear_map_on_u(|x| gd.mul(&f, x).mul(&f, g)).transpose()
        })
        .collect();
    Action::new(label, f, par.dim_u(), mats)
}

/// `(aΛ)(x) = Λ(x a)` on `Uc*`.
pub fn left_action_on_uc_dual(par: &Parabolic, gens: &[SignedMatrix]) -> Vec<FpMatrix> {
    let f = *par.field();
    gens.iter()
        .map(|a| par.linear_map_on_uc(|x| x.mul(&f, a)).transpose())
        .collect()
}

/// `(Λa)(x) = Λ(a x)` on `Uc*`.
pub fn right_action_on_uc_dual(par: &Parabolic, gens: &[SignedMatrix]) -> Vec<FpMatrix> {
    let f = *par.field();
    gens.iter()
        .map(|a| par.linear_map_on_uc(|x| a.mul(&f, x)).transpose())
        .collect()
}

/// `(Ad*_h M)(x) = M(h⁻¹ x h)` on `Uc*`, for every element of `L`.
pub fn coadjoint_on_uc_dual(par: &Parabolic) -> Vec<FpMatrix> {
    let f = *par.field();
    let lt = par.levi_table();
    (0..par.levi().len() as u32)
        .map(|h| {
            let m = &par.levi()[h as usize];
            let mi = &par.levi()[lt.inv(h) as usize];
            par.linear_map_on_uc(|x| mi.mul(&f, x).mul(&f, m)).transpose()
        })
        .collect()
}

/// `(Ad*_h λ)(x) = λ(h⁻¹ x h)` on `u*`, for every element of `L`.
pub fn coadjoint_on_u_dual(par: &Parabolic) -> Vec<FpMatrix> {
    let f = *par.field();
    let lt = par.levi_table();
    (0..par.levi().len() as u32)
        .map(|h| {
            let m = &par.levi()[h as usize];
            let mi = &par.levi()[lt.inv(h) as usize];
            par.linear_map_on_u(|x| mi.mul(&f, x).mul(&f, m)).transpose()
        })
        .collect()
}

/// The smallest `Ub`-`Ub` invariant subspace `Uc_h` of `Uc` containing every
/// `h x h⁻¹ - x`, and `u_h = u ∩ Uc_h`. Both are returned in their own
/// coordinates (`Uc` positions and `u` roots).
pub fn smallest_bimodule(par: &Parabolic, h: u32) -> (Subspace, Subspace) {
    let f = *par.field();
    let dim = par.spec().dim();
    let hm = &par.levi()[h as usize];
    let hi = &par.levi()[par.levi_table().inv(h) as usize];
    let mut span = Subspace::zero(par.uc_dim());
    for &(a, b) in par.uc_positions() {
        let e = SignedMatrix::unit(dim, a, b);
        let d = hm.mul(&f, &e).mul(&f, hi).sub(&f, &e);
        span.insert(&f, &par.uc_coords(&d));
    }
    let units: Vec<SignedMatrix> = par
        .uc_positions()
        .iter()
        .map(|&(a, b)| SignedMatrix::unit(dim, a, b))
        .collect();
    let mut frontier: Vec<Vec<u32>> = span.basis().to_vec();
    while let Some(v) = frontier.pop() {
        let m = par.uc_matrix(&v);
        for e in &units {
            for prod in [e.mul(&f, &m), m.mul(&f, e)] {
                let c = par.uc_coords(&prod);
                if span.insert(&f, &c) {
                    frontier.push(c);
                }
            }
        }
    }
    let u_in_uc: Vec<Vec<u32>> = (0..par.dim_u())
        .map(|k| {
            let mut e = vec![0; par.dim_u()];
            e[k] = 1;
            par.uc_coords(&par.u_matrix(&e))
        })
        .collect();
    let u_space = Subspace::span(&f, par.uc_dim(), &u_in_uc);
    let meet = u_space.intersect(&f, &span);
    let u_h = Subspace::span(
        &f,
        par.dim_u(),
        &meet
            .basis()
            .iter()
            .map(|v| par.u_coords(&par.uc_matrix(v)))
            .collect::<Vec<_>>(),
    );
    (span, u_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Family, GroupSpec, SubgroupTag};
    use crate::session::Guards;

    fn par(fam: Family, blocks: &[usize]) -> Parabolic {
        Parabolic::new(GroupSpec::new(fam, 2, 3, blocks).unwrap(), &Guards::default()).unwrap()
    }

    #[test]
    fn borel_d2_orbits_on_u() {
        let p = par(Family::D, &[1, 1, 1, 1]);
        let a = dot_action_on_u(&p, "Ub", &p.generators(SubgroupTag::Ub));
        assert!(a.is_bijective());
        let part = partition_orbits(&a, 1 << 20).unwrap();
        assert_eq!(part.orbits.iter().map(Orbit::len).sum::<usize>(), 9);
        for o in &part.orbits {
            assert!([1, 3, 9].contains(&o.len()));
        }
        assert_eq!(orbit_closure(&a, 0).points, vec![0]);
    }

    #[test]
    fn one_point_space() {
        let f = PrimeField::new(3).unwrap();
        let a = Action::new("trivial", f, 0, vec![FpMatrix::identity(0)]);
        assert_eq!(partition_orbits(&a, 10).unwrap().orbits.len(), 1);
    }

    #[test]
    fn hb_orbits_inside_ub_orbits() {
        let p = par(Family::B, &[1, 1, 1, 1, 1]);
        let ub = dot_action_on_dual(&p, "Ub", &p.generators(SubgroupTag::Ub));
        let hb = dot_action_on_dual(&p, "Hb", &p.generators(SubgroupTag::Hb));
        let parts = partition_orbits(&ub, 1 << 20).unwrap();
        for x in 0..81 {
            let o = orbit_closure(&hb, x);
            assert!(o.points.iter().all(|&y| parts.orbit_of[y as usize] == parts.orbit_of[x as usize]));
            let n = parts.orbits[parts.orbit_of[x as usize] as usize].len();
            assert!(n.is_power_of_two() || [1, 3, 9, 27, 81].contains(&n));
        }
    }

    #[test]
    fn bimodule_of_identity_and_generic_torus() {
        let p = par(Family::B, &[1, 1, 1, 1, 1]);
        let id = p.levi_table().identity();
        let (uc, u) = smallest_bimodule(&p, id);
        assert_eq!((uc.dim(), u.dim()), (0, 0));
        // diag(a, b, 1, b⁻¹, a⁻¹) with a, b, a/b ≠ 1 is impossible at q = 3,
        // but -1 in the middle moves every root touching index 0.
        let f = *p.field();
        for h in 0..p.levi().len() as u32 {
            let (_, uh) = smallest_bimodule(&p, h);
            let m = p.ad_map(h);
            for x in 0..p.u_size() as u32 {
                let v = p.decode_u(x);
                let mut diff: Vec<u32> = m.apply(&f, &v).iter().zip(&v).map(|(a, b)| f.sub(*a, *b)).collect();
                uh.reduce(&f, &mut diff);
                assert!(diff.iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn quotient_by_zero_and_everything() {
        let p = par(Family::B, &[1, 1, 1, 1, 1]);
        let a = dot_action_on_u(&p, "Ub", &p.generators(SubgroupTag::Ub));
        let full = partition_orbits(&a, 1 << 20).unwrap();
        let q0 = quotient_orbits(&a, &Subspace::zero(4), 1 << 20).unwrap();
        assert_eq!(q0.orbits, full.orbits);
        let q1 = quotient_orbits(&a, &Subspace::full(4), 1 << 20).unwrap();
        assert_eq!(q1.orbits.len(), 1);
    }
}
