//! Serialized supercharacter tables: rows are supercharacters, columns are
//! superclasses in canonical order, values are exact cyclotomic numbers
//! written as rational coefficient strings on the power basis of `Q(ζ_m)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{CycField, Cyclotomic};
use crate::error::{Error, Result};
use crate::groups::Parabolic;
use crate::theory::{Domain, SuperTheory};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub id: usize,
    pub label: Value,
    pub degree: Option<i64>,
    /// One coefficient list per superclass.
    pub values: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassColumn {
    pub id: usize,
    pub label: Value,
    pub size: usize,
    /// Matrix of the smallest element, rows and columns from `n` down to `-n`.
    pub representative: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub config: Value,
    pub theory: String,
    /// `m` with values in `Q(ζ_m)`.
    pub conductor: u64,
    pub supercharacters: Vec<CharacterRow>,
    pub superclasses: Vec<ClassColumn>,
}

pub fn table_doc(par: &Parabolic, config: Value, t: &SuperTheory) -> Result<TableDoc> {
    if t.classes.is_empty() || t.characters.is_empty() {
        return Err(Error::internal("a supercharacter theory has at least one class and one character"));
    }
    let superclasses = t
        .classes
        .iter()
        .enumerate()
        .map(|(id, c)| {
            let e = c.representative();
            let m = match t.domain {
                Domain::U => par.unipotent(e).clone(),
                Domain::G => par.g_matrix(e),
            };
            ClassColumn {
                id,
                label: c.label.clone(),
                size: c.elements.len(),
                representative: m.rows(),
            }
        })
        .collect();
    let supercharacters = t
        .characters
        .iter()
        .enumerate()
        .map(|(id, ch)| CharacterRow {
            id,
            label: ch.label.clone(),
            degree: t.degree(id),
            values: t
                .classes
                .iter()
                .map(|c| Cyclotomic::from_int(&t.field, &ch.values[c.representative() as usize]).to_strings())
                .collect(),
        })
        .collect();
    Ok(TableDoc {
        config,
        theory: t.name.clone(),
        conductor: t.field.conductor(),
        supercharacters,
        superclasses,
    })
}

pub fn to_json(doc: &TableDoc) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

/// Header `id,label,degree,K0,…`, then a `size` row, then one row per
/// supercharacter. A value cell holds its coefficients separated by spaces.
pub fn to_csv(doc: &TableDoc) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::internal(format!("csv: {e}"));
    let mut header = vec!["id".to_string(), "label".into(), "degree".into()];
    header.extend(doc.superclasses.iter().map(|c| format!("K{}", c.id)));
    w.write_record(&header).map_err(csv_err)?;
    let mut sizes = vec!["size".to_string(), String::new(), String::new()];
    sizes.extend(doc.superclasses.iter().map(|c| c.size.to_string()));
    w.write_record(&sizes).map_err(csv_err)?;
    for row in &doc.supercharacters {
        let mut rec = vec![
            row.id.to_string(),
            serde_json::to_string(&row.label)?,
            row.degree.map(|d| d.to_string()).unwrap_or_default(),
        ];
        rec.extend(row.values.iter().map(|v| v.join(" ")));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::internal(e.to_string()))
}

/// A table read back with exact values.
pub struct ParsedTable {
    pub doc: TableDoc,
    pub field: Arc<CycField>,
    /// `values[character][class]`
    pub values: Vec<Vec<Cyclotomic>>,
}

pub fn parse_json(text: &str) -> Result<ParsedTable> {
    let doc: TableDoc = serde_json::from_str(text)?;
    let field = CycField::new(doc.conductor);
    let values = doc
        .supercharacters
        .iter()
        .map(|row| {
            if row.values.len() != doc.superclasses.len() {
                return Err(Error::usage(format!("row {} has the wrong number of values", row.id)));
            }
            row.values.iter().map(|v| Cyclotomic::from_strings(&field, v)).collect()
        })
        .collect::<Result<_>>()?;
    Ok(ParsedTable { doc, field, values })
}

pub fn parse_csv(text: &str, conductor: u64) -> Result<Vec<Vec<Cyclotomic>>> {
    let field = CycField::new(conductor);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| Error::usage(format!("csv: {e}"));
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        if i == 0 {
            continue;
        }
        out.push(
            rec.iter()
                .skip(3)
                .map(|cell| Cyclotomic::from_strings(&field, &cell.split(' ').collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(out)
}
