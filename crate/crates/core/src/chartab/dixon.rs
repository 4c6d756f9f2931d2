//! Dixon–Burnside: simultaneous eigenvectors of the class-sum matrices
//! over a prime field `F_ℓ` with `ℓ ≡ 1 (mod exponent)`, lifted to exact
//! cyclotomic values through eigenvalue multiplicities.

use std::sync::Arc;

use super::classes::ConjugacyClasses;
use super::group::GroupTable;
use crate::algebra::linalg::kernel;
use crate::algebra::{is_prime, CycField, IntCyc, PrimeField};
use crate::error::{Error, Result};

fn choose_prime(order: u64, exponent: u64) -> Result<PrimeField> {
    let bound = 2 * ((order as f64).sqrt().ceil() as u64) + 1;
    let mut ell = exponent + 1;
    while ell <= bound || !is_prime(ell) || order % ell == 0 {
        ell += exponent;
    }
    PrimeField::new(ell)
}

pub(super) fn dixon_burnside(
    group: &GroupTable,
    classes: &ConjugacyClasses,
    field: &Arc<CycField>,
) -> Result<Vec<Vec<IntCyc>>> {
    let order = group.order() as u64;
    let e = group.exponent();
    let f = choose_prime(order, e)?;
    let ell = f.p() as u64;
    let k = classes.len();
    let id_class = classes.class_of[group.identity() as usize] as usize;

    // coef[j][a][b] = #{x ∈ C_j : x⁻¹ z ∈ C_a} for fixed z ∈ C_b,
    // the structure constants of C_j C_a = Σ_b coef[j][a][b] C_b.
    let mut coef = vec![vec![vec![0u32; k]; k]; k];
    for b in 0..k {
        let z = classes.representative(b);
        for (j, cj) in classes.classes.iter().enumerate() {
            for &x in cj {
                let a = classes.class_of[group.mul(group.inv(x), z) as usize] as usize;
                coef[j][a][b] = f.add(coef[j][a][b], 1);
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<u32>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u32; k];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 0..k {
        if j == id_class || spaces.iter().all(|s| s.len() == 1) {
            continue;
        }
        // The central character ω is a right eigenvector: Σ_b coef[j][a][b] ω_b = ω_j ω_a.
        let m = &coef[j];
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let image: Vec<Vec<u32>> = space
                .iter()
                .map(|v| {
                    (0..k)
                        .map(|a| (0..k).fold(0, |s, b| f.add(s, f.mul(m[a][b], v[b]))))
                        .collect()
                })
                .collect();
            let mut found = 0;
            for t in 0..ell as u32 {
                // rows: (M - t) applied to basis combinations
                let rows: Vec<Vec<u32>> = (0..k)
                    .map(|a| {
                        (0..space.len())
                            .map(|i| f.sub(image[i][a], f.mul(t, space[i][a])))
                            .collect()
                    })
                    .collect();
                let ker = kernel(&f, &rows, space.len());
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let vectors = ker
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|a| (0..space.len()).fold(0, |s, i| f.add(s, f.mul(c[i], space[i][a]))))
                            .collect()
                    })
                    .collect();
                next.push(vectors);
            }
            if found != space.len() {
                return Err(Error::internal("class matrices are not simultaneously diagonalizable"));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::internal("class matrices do not separate the characters"));
    }

    let inverse_class: Vec<usize> = (0..k)
        .map(|c| classes.class_of[group.inv(classes.representative(c)) as usize] as usize)
        .collect();
    let root_e = f.pow(f.primitive_root(), (ell - 1) / e);
    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        let scale = f.inv(v[id_class]).ok_or_else(|| Error::internal("central character vanishes at 1"))?;
        let w: Vec<u32> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0;
        for c in 0..k {
            let h = f.inv(classes.size(c) as u32 % f.p()).unwrap();
            s = f.add(s, f.mul(f.mul(w[c], w[inverse_class[c]]), h));
        }
        let target = f.mul(f.reduce(order as i64), f.inv(s).ok_or_else(|| Error::internal("degenerate norm"))?);
        let degree = (1..=((order as f64).sqrt() as u32 + 1))
            .find(|&d| f.mul(d % f.p(), d % f.p()) == target)
            .ok_or_else(|| Error::internal("no integral degree"))?;
        let value_mod: Vec<u32> = (0..k)
            .map(|c| f.mul(f.mul(w[c], degree), f.inv(classes.size(c) as u32 % f.p()).unwrap()))
            .collect();

        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let g = classes.representative(c);
            let o = group.element_order(g);
            let z = f.pow(root_e, e / o);
            let z_inv = f.inv(z).unwrap();
            let o_inv = f.inv(o as u32 % f.p()).unwrap();
            let powers_vals: Vec<u32> = (0..o)
                .map(|j| value_mod[classes.class_of[group.pow(g, j) as usize] as usize])
                .collect();
            let mut value = field.int_zero();
            let mut total = 0u64;
            for s_idx in 0..o {
                let step = f.pow(z_inv, s_idx);
                let mut acc = 0;
                let mut zj = 1;
                for &cv in &powers_vals {
                    acc = f.add(acc, f.mul(cv, zj));
                    zj = f.mul(zj, step);
                }
                let mult = f.mul(acc, o_inv);
                if mult > degree {
                    return Err(Error::internal("eigenvalue multiplicity exceeds the degree"));
                }
                total += mult as u64;
                if mult > 0 {
                    let term = field.int_scale(field.root(s_idx as i64, o), mult as i64);
                    field.int_add_assign(&mut value, &term);
                }
            }
            if total != degree as u64 {
                return Err(Error::internal("eigenvalue multiplicities do not sum to the degree"));
            }
            row.push(value);
        }
        rows.push(row);
    }
    let trivial: Vec<IntCyc> = vec![field.int_from(1); k];
    rows.sort_by(|a, b| {
        let da = field.int_as_integer(&a[id_class]);
        let db = field.int_as_integer(&b[id_class]);
        da.cmp(&db)
            .then_with(|| (a != &trivial).cmp(&(b != &trivial)))
            .then_with(|| a.cmp(b))
    });
    Ok(rows)
}
