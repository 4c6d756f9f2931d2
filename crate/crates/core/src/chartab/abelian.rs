use std::sync::Arc;

use super::classes::ConjugacyClasses;
use super::group::GroupTable;
use crate::algebra::{CycField, IntCyc};

/// Linear characters of an abelian group, built by extending from the
/// trivial subgroup one cyclic step at a time. Values are stored as
/// exponents of `ζ_e`, `e` the group exponent.
pub(super) fn linear_characters(
    group: &GroupTable,
    classes: &ConjugacyClasses,
    field: &Arc<CycField>,
) -> Vec<Vec<IntCyc>> {
    let n = group.order();
    let e = group.exponent();
    let mut in_sub = vec![false; n];
    in_sub[group.identity() as usize] = true;
    let mut members = vec![group.identity()];
    let mut chars: Vec<Vec<u64>> = vec![vec![0; n]];

    for g in 0..n as u32 {
        if in_sub[g as usize] {
            continue;
        }
        let mut k = 1u64;
        let mut gk = g;
        while !in_sub[gk as usize] {
            gk = group.mul(gk, g);
            k += 1;
        }
        let mut extended = Vec::with_capacity(chars.len() * k as usize);
        for chi in &chars {
            let a = chi[gk as usize];
            assert_eq!(a % k, 0, "restriction to a cyclic step is not a k-th power");
            for t in 0..k {
                let b = (a / k + (e / k) * t) % e;
                let mut next = chi.clone();
                let mut gi = group.identity();
                for i in 1..k {
                    gi = group.mul(gi, g);
                    for &h in &members {
                        next[group.mul(gi, h) as usize] = (i * b + chi[h as usize]) % e;
                    }
                }
                extended.push(next);
            }
        }
        let mut gi = group.identity();
        let base = members.clone();
        for _ in 1..k {
            gi = group.mul(gi, g);
            for &h in &base {
                let x = group.mul(gi, h);
                in_sub[x as usize] = true;
                members.push(x);
            }
        }
        chars = extended;
    }
    debug_assert_eq!(members.len(), n);
    let mut rows: Vec<Vec<IntCyc>> = chars
        .iter()
        .map(|chi| {
            classes
                .classes
                .iter()
                .map(|c| field.root(chi[c[0] as usize] as i64, e).clone())
                .collect()
        })
        .collect();
    let trivial: Vec<IntCyc> = vec![field.int_from(1); classes.len()];
    rows.sort_by(|a, b| (a != &trivial).cmp(&(b != &trivial)).then_with(|| a.cmp(b)));
    rows
}
