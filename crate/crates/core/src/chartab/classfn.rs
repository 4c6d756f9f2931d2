use std::sync::Arc;

use super::classes::{orbit_partition, ConjugacyClasses};
use super::group::{GroupTable, Subgroup};
use super::CharacterTable;
use crate::algebra::{CycField, Cyclotomic, IntCyc, Rational};
use crate::error::{Error, Result};

/// Values of a class function on every element of its (enumerated) domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    pub values: Vec<IntCyc>,
}

impl ClassFunction {
    pub fn constant(field: &CycField, n: usize, c: i64) -> Self {
        Self {
            values: vec![field.int_from(c); n],
        }
    }

    pub fn is_class_function(&self, classes: &ConjugacyClasses) -> bool {
        classes
            .classes
            .iter()
            .all(|c| c.iter().all(|&x| self.values[x as usize] == self.values[c[0] as usize]))
    }
}

/// `(1/|G|) Σ_g φ(g) conj(ψ(g))`, exactly.
pub fn inner_product(field: &Arc<CycField>, phi: &ClassFunction, psi: &ClassFunction) -> Cyclotomic {
    assert_eq!(phi.values.len(), psi.values.len());
    let mut s = field.int_zero();
    for (a, b) in phi.values.iter().zip(&psi.values) {
        field.int_mul_add(&mut s, a, &field.int_conj(b));
    }
    Cyclotomic::from_int(field, &s).scale(&Rational::new(1.into(), (phi.values.len() as i64).into()))
}

/// `Ind_H^G χ (g) = (1/|H|) Σ_{x ∈ G} χ̇(x g x⁻¹)` with `χ̇` the zero extension.
pub fn induce_character(
    field: &Arc<CycField>,
    group: &GroupTable,
    sub: &Subgroup,
    chi: &ClassFunction,
) -> Result<ClassFunction> {
    if chi.values.len() != sub.order() {
        return Err(Error::usage("class function does not live on the subgroup"));
    }
    if sub.members.iter().any(|&m| m as usize >= group.order()) {
        return Err(Error::usage("subgroup is not contained in the group"));
    }
    let mut values = Vec::with_capacity(group.order());
    for g in 0..group.order() as u32 {
        let mut s = field.int_zero();
        for x in 0..group.order() as u32 {
            if let Some(l) = sub.local(group.conj(x, g)) {
                field.int_add_assign(&mut s, &chi.values[l as usize]);
            }
        }
        values.push(
            field
                .int_div_exact(&s, sub.order() as i64)
                .ok_or_else(|| Error::internal("induced value is not an algebraic integer"))?,
        );
    }
    Ok(ClassFunction { values })
}

/// Induction from a subgroup `H` to a group known only through its
/// conjugacy classes: `Ind χ (g) = |G| / (|Cl(g)| |H|) · Σ_{h ∈ H ∩ Cl(g)} χ(h)`.
///
/// `sub` yields `(element of G, χ(element))` for every element of `H`.
/// Returns one value per class of `G`.
pub fn induce_by_classes<'a>(
    field: &Arc<CycField>,
    classes: &ConjugacyClasses,
    group_order: usize,
    sub: impl Iterator<Item = (u32, &'a IntCyc)>,
) -> Result<Vec<IntCyc>> {
    let mut sums = vec![field.int_zero(); classes.len()];
    let mut h_order = 0usize;
    for (g, v) in sub {
        field.int_add_assign(&mut sums[classes.class_of[g as usize] as usize], v);
        h_order += 1;
    }
    if h_order == 0 || group_order % h_order != 0 {
        return Err(Error::usage("subgroup order does not divide the group order"));
    }
    sums.iter()
        .enumerate()
        .map(|(c, s)| {
            let num = field.int_scale(s, (group_order / h_order) as i64);
            field
                .int_div_exact(&num, classes.size(c) as i64)
                .ok_or_else(|| Error::internal("induced value is not an algebraic integer"))
        })
        .collect()
}

/// A sum of irreducible characters of a normal subgroup over one orbit of
/// the conjugation action of an overgroup.
#[derive(Clone, Debug)]
pub struct OrbitSum {
    /// Indices into the character table.
    pub members: Vec<usize>,
    /// Values on the elements of the normal subgroup.
    pub function: ClassFunction,
}

/// Multiplicity-one orbit sums of `Irr(L₀)` under conjugation by `S`.
///
/// `table` is the character table of `l0.table`; `s` lists elements of the
/// parent group normalizing `L₀`.
pub fn s_orbit_sums(
    parent: &GroupTable,
    l0: &Subgroup,
    s: &[u32],
    table: &CharacterTable,
) -> Result<Vec<OrbitSum>> {
    if !parent.normalizes(s, l0) {
        return Err(Error::usage("subgroup is not normal in the acting group"));
    }
    let field = &table.field;
    let funcs: Vec<ClassFunction> = (0..table.len()).map(|c| table.class_function(c)).collect();
    // conjugated[g][x] = local index of s_g⁻¹ x s_g
    let conjugated: Vec<Vec<u32>> = s
        .iter()
        .map(|&g| {
            l0.members
                .iter()
                .map(|&x| l0.local(parent.conj(parent.inv(g), x)).unwrap())
                .collect()
        })
        .collect();
    let act = |gi: usize, chi: u32| -> u32 {
        let f = &funcs[chi as usize];
        let moved: Vec<&IntCyc> = conjugated[gi].iter().map(|&y| &f.values[y as usize]).collect();
        funcs
            .iter()
            .position(|h| h.values.iter().zip(&moved).all(|(a, b)| a == *b))
            .expect("conjugate of an irreducible is irreducible") as u32
    };
    let (orbits, _) = orbit_partition(funcs.len(), s.len(), act);

    // Brauer: orbits on characters and on classes are equinumerous.
    let cl = &table.classes;
    let (class_orbits, _) = orbit_partition(cl.len(), s.len(), |gi, c| {
        let x = cl.representative(c as usize);
        cl.class_of[conjugated[gi][x as usize] as usize]
    });
    if class_orbits.len() != orbits.len() {
        return Err(Error::internal("orbit counts on characters and classes differ"));
    }

    Ok(orbits
        .into_iter()
        .map(|members| {
            let mut values = vec![field.int_zero(); l0.order()];
            for &m in &members {
                for (v, w) in values.iter_mut().zip(&funcs[m as usize].values) {
                    field.int_add_assign(v, w);
                }
            }
            OrbitSum {
                members: members.into_iter().map(|m| m as usize).collect(),
                function: ClassFunction { values },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{conjugacy_classes, irr_characters};
    use num_traits::One;

    fn s3() -> GroupTable {
        let perms: Vec<[u8; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        GroupTable::from_elements(&perms, |a, b| [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]).unwrap()
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = s3();
        let k = CycField::new(3);
        let triv = g.subgroup(&[g.identity()]).unwrap();
        let one = ClassFunction::constant(&k, 1, 1);
        let reg = induce_character(&k, &g, &triv, &one).unwrap();
        assert_eq!(k.int_as_integer(&reg.values[g.identity() as usize]), Some(6));
        let all = ClassFunction::constant(&k, 6, 1);
        assert!(inner_product(&k, &reg, &all).as_rational().unwrap().is_one());
        let whole = g.subgroup(&(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(induce_character(&k, &g, &whole, &all).unwrap(), all);
    }

    #[test]
    fn frobenius_reciprocity() {
        let g = s3();
        let k = CycField::new(3);
        let a3 = g.subgroup(&[0, 3, 4]).unwrap();
        let ta = irr_characters(&a3.table, &k, 100).unwrap();
        let tg = irr_characters(&g, &k, 100).unwrap();
        for a in 0..ta.len() {
            let psi = ta.class_function(a);
            let ind = induce_character(&k, &g, &a3, &psi).unwrap();
            assert!(ind.is_class_function(&conjugacy_classes(&g)));
            for c in 0..tg.len() {
                let chi = tg.class_function(c);
                let res = ClassFunction {
                    values: a3.members.iter().map(|&m| chi.values[m as usize].clone()).collect(),
                };
                assert_eq!(inner_product(&k, &ind, &chi), inner_product(&k, &psi, &res));
            }
            let classes = conjugacy_classes(&g);
            let by_classes = induce_by_classes(
                &k,
                &classes,
                6,
                a3.members.iter().zip(&psi.values).map(|(&m, v)| (m, v)),
            )
            .unwrap();
            for x in 0..6 {
                assert_eq!(by_classes[classes.class_of[x] as usize], ind.values[x]);
            }
        }
    }

    #[test]
    fn orbit_sums_of_a3_under_s3() {
        let g = s3();
        let k = CycField::new(3);
        let a3 = g.subgroup(&[0, 3, 4]).unwrap();
        let ta = irr_characters(&a3.table, &k, 100).unwrap();
        let sums = s_orbit_sums(&g, &a3, &(0..6).collect::<Vec<_>>(), &ta).unwrap();
        assert_eq!(sums.len(), 2);
        assert!(sums.iter().any(|s| s.members.len() == 2));
        let trivial = s_orbit_sums(&g, &a3, &a3.members, &ta).unwrap();
        assert_eq!(trivial.len(), 3);
        let c2 = g.subgroup(&[0, 1]).unwrap();
        let tc = irr_characters(&c2.table, &k, 100).unwrap();
        assert!(s_orbit_sums(&g, &c2, &[0, 3], &tc).is_err());
    }
}
