//! Character theory of small enumerated groups: conjugacy classes,
//! irreducible characters, orbit sums and induction.

mod abelian;
mod classes;
mod classfn;
mod dixon;
mod group;

pub use classes::{conjugacy_classes, orbit_partition, ConjugacyClasses};
pub use classfn::{induce_by_classes, induce_character, inner_product, s_orbit_sums, ClassFunction, OrbitSum};
pub use group::{GroupTable, Subgroup};

use std::sync::Arc;

use crate::algebra::{CycField, IntCyc};
use crate::error::{Error, Result};

/// Irreducible characters of an enumerated group, one value per class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: ConjugacyClasses,
    /// `values[χ][class]`
    pub values: Vec<Vec<IntCyc>>,
    pub field: Arc<CycField>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self, chi: usize) -> i64 {
        self.field
            .int_as_integer(&self.values[chi][self.classes.class_of[self.classes.identity as usize] as usize])
            .expect("degrees are integers")
    }

    /// The character as a function on every element of the group.
    pub fn class_function(&self, chi: usize) -> ClassFunction {
        ClassFunction {
            values: self
                .classes
                .class_of
                .iter()
                .map(|&c| self.values[chi][c as usize].clone())
                .collect(),
        }
    }

    /// Both orthogonality relations, exactly.
    pub fn check_orthogonality(&self, group: &GroupTable) -> Result<()> {
        let k = &self.field;
        let n = group.order() as i64;
        let cl = &self.classes;
        for (a, ra) in self.values.iter().enumerate() {
            for (b, rb) in self.values.iter().enumerate() {
                let mut s = k.int_zero();
                for (c, members) in cl.classes.iter().enumerate() {
                    let term = k.int_mul(&ra[c], &k.int_conj(&rb[c]));
                    k.int_add_assign(&mut s, &k.int_scale(&term, members.len() as i64));
                }
                let expect = if a == b { n } else { 0 };
                if k.int_as_integer(&s) != Some(expect) {
                    return Err(Error::internal(format!("row orthogonality fails for characters {a}, {b}")));
                }
            }
        }
        for c in 0..cl.len() {
            for d in 0..cl.len() {
                let mut s = k.int_zero();
                for row in &self.values {
                    k.int_mul_add(&mut s, &row[c], &k.int_conj(&row[d]));
                }
                let expect = if c == d { n / cl.classes[c].len() as i64 } else { 0 };
                if k.int_as_integer(&s) != Some(expect) {
                    return Err(Error::internal(format!("column orthogonality fails for classes {c}, {d}")));
                }
            }
        }
        Ok(())
    }
}

/// Complete irreducible character table with exact values in `field`.
pub fn irr_characters(group: &GroupTable, field: &Arc<CycField>, limit: usize) -> Result<CharacterTable> {
    if group.order() > limit {
        return Err(Error::Guard {
            what: "character table",
            needed: group.order() as u128,
            limit: limit as u128,
        });
    }
    let e = group.exponent();
    if field.natural_order() % e != 0 {
        return Err(Error::usage(format!(
            "field Q(ζ_{}) does not contain the {e}-th roots of unity",
            field.conductor()
        )));
    }
    let classes = conjugacy_classes(group);
    let values = if group.is_abelian() {
        abelian::linear_characters(group, &classes, field)
    } else {
        dixon::dixon_burnside(group, &classes, field)?
    };
    let table = CharacterTable {
        classes,
        values,
        field: field.clone(),
    };
    if table.values.len() != table.classes.len() {
        return Err(Error::internal("number of characters differs from number of classes"));
    }
    table.check_orthogonality(group)?;
    Ok(table)
}
