//! The data shared by both constructions: a list of supercharacters given
//! by their values on every group element, and a partition into superclasses.

use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::{CycField, IntCyc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    /// The unipotent radical `U`, elements indexed by `u`.
    U,
    /// The parabolic group `G`, elements encoded as [`crate::groups::GElem`].
    G,
}

#[derive(Clone, Debug)]
pub struct SuperCharacter {
    pub label: Value,
    pub values: Vec<IntCyc>,
}

#[derive(Clone, Debug)]
pub struct SuperClass {
    pub label: Value,
    /// Sorted element indices.
    pub elements: Vec<u32>,
}

impl SuperClass {
    pub fn representative(&self) -> u32 {
        self.elements[0]
    }
}

#[derive(Clone, Debug)]
pub struct SuperTheory {
    pub name: String,
    pub domain: Domain,
    pub order: usize,
    pub identity: u32,
    pub field: Arc<CycField>,
    pub characters: Vec<SuperCharacter>,
    pub classes: Vec<SuperClass>,
}

impl SuperTheory {
    pub fn degree(&self, chi: usize) -> Option<i64> {
        self.field.int_as_integer(&self.characters[chi].values[self.identity as usize])
    }

    /// Superclass index of every element, `u32::MAX` where uncovered
    /// (the last class wins on overlaps).
    pub fn class_of(&self) -> Vec<u32> {
        let mut out = vec![u32::MAX; self.order];
        for (k, c) in self.classes.iter().enumerate() {
            for &e in &c.elements {
                out[e as usize] = k as u32;
            }
        }
        out
    }

    /// Put classes in order of their smallest element, characters keep theirs.
    pub fn canonicalize(&mut self) {
        for c in &mut self.classes {
            c.elements.sort_unstable();
        }
        self.classes.sort_by_key(|c| c.elements[0]);
    }
}

/// `y ↦ Σ_{μ ∈ forms} ε(μ(y))` for every point `y` of `F_p^dim`, with `ε(t) = ζ_p^t`.
pub fn form_sum_values(field: &CycField, p: u32, dim: usize, forms: &[u32]) -> Vec<IntCyc> {
    use crate::algebra::linalg::decode_vector;
    use rayon::prelude::*;
    let vecs: Vec<Vec<u32>> = forms.iter().map(|&m| decode_vector(p, dim, m)).collect();
    let size = (p as usize).pow(dim as u32);
    (0..size as u32)
        .into_par_iter()
        .map(|y| {
            let yv = decode_vector(p, dim, y);
            let mut counts = vec![0i64; p as usize];
            for mu in &vecs {
                let t = mu.iter().zip(&yv).fold(0u64, |s, (&a, &b)| s + a as u64 * b as u64) % p as u64;
                counts[t as usize] += 1;
            }
            let mut v = field.int_zero();
            for (t, &c) in counts.iter().enumerate() {
                if c != 0 {
                    let term = field.int_scale(field.root(t as i64, p as u64), c);
                    field.int_add_assign(&mut v, &term);
                }
            }
            v
        })
        .collect()
}

/// `a · b`, skipping the polynomial product when `a` is a rational integer.
pub(crate) fn scaled(field: &CycField, a: &IntCyc, b: &IntCyc) -> IntCyc {
    match field.int_as_integer(a) {
        Some(1) => b.clone(),
        Some(k) => field.int_scale(b, k),
        None => field.int_mul(a, b),
    }
}

/// Drop repeated characters (identical value vectors), keeping first occurrences.
pub(crate) fn dedup_characters(chars: Vec<SuperCharacter>) -> (Vec<SuperCharacter>, Vec<usize>) {
    use std::collections::HashMap;
    let mut seen: HashMap<&[IntCyc], usize> = HashMap::new();
    let mut keep = Vec::new();
    for (i, c) in chars.iter().enumerate() {
        if !seen.contains_key(c.values.as_slice()) {
            seen.insert(&c.values, i);
            keep.push(i);
        }
    }
    drop(seen);
    let mut chars: Vec<Option<SuperCharacter>> = chars.into_iter().map(Some).collect();
    let out = keep.iter().map(|&i| chars[i].take().unwrap()).collect();
    (out, keep)
}

/// Collects superclasses, dropping exact repeats. A set that overlaps an
/// earlier one without being equal to it is kept, so the partition check sees it.
pub(crate) struct ClassCollector {
    owner: Vec<u32>,
    pub classes: Vec<SuperClass>,
}

impl ClassCollector {
    pub fn new(order: usize) -> Self {
        Self {
            owner: vec![u32::MAX; order],
            classes: Vec::new(),
        }
    }

    pub fn offer(&mut self, label: Value, mut elements: Vec<u32>) {
        elements.sort_unstable();
        elements.dedup();
        let first = self.owner[elements[0] as usize];
        if first != u32::MAX && self.classes[first as usize].elements == elements {
            return;
        }
        let id = self.classes.len() as u32;
        for &e in &elements {
            if self.owner[e as usize] == u32::MAX {
                self.owner[e as usize] = id;
            }
        }
        self.classes.push(SuperClass { label, elements });
    }
}
