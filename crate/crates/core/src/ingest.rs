//! D4M-style table explosion: every distinct `field|value` pair becomes its
//! own column holding an existence value.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use crate::algebra::ValueAlgebra;
use crate::array::{AssociativeArray, KeySet, Selector};
use crate::error::{Error, Result};
use crate::graph::IncidencePair;
use crate::value::Value;

pub const DEFAULT_SEPARATOR: char = '|';

/// Separator between repeated values inside one TSV cell.
pub const VALUE_SEPARATOR: char = ';';

const DEMO_TSV: &str = include_str!("../data/music.tsv");

/// Records with possibly multi-valued fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabularSource {
    keys: Vec<String>,
    fields: Vec<String>,
    /// Per record: field → values, in field order.
    cells: Vec<BTreeMap<String, Vec<String>>>,
}

impl TabularSource {
    pub fn new(
        keys: Vec<String>,
        fields: Vec<String>,
        cells: Vec<BTreeMap<String, Vec<String>>>,
    ) -> Result<Self> {
        if keys.len() != cells.len() {
            return Err(Error::Format("one cell map per record key is required".into()));
        }
        if let Some(k) = first_duplicate(&keys) {
            return Err(Error::Format(format!("duplicate record key `{k}`")));
        }
        if let Some(f) = first_duplicate(&fields) {
            return Err(Error::Format(format!("duplicate field `{f}`")));
        }
        for (key, row) in keys.iter().zip(&cells) {
            for (field, values) in row {
                if !fields.contains(field) {
                    return Err(Error::Format(format!("record `{key}` uses unknown field `{field}`")));
                }
                if values.iter().any(String::is_empty) {
                    return Err(Error::Format(format!("record `{key}` has an empty `{field}` value")));
                }
            }
        }
        Ok(Self { keys, fields, cells })
    }

    /// UTF-8 TSV with a header row; the first column holds record keys and
    /// repeated values within a cell are separated by `;`. Empty cells
    /// contribute no values.
    pub fn read_tsv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .quoting(false)
            .has_headers(true)
            .from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        if header.is_empty() {
            return Err(Error::Format("TSV header is empty".into()));
        }
        let fields = header[1..].to_vec();
        let mut keys = Vec::new();
        let mut cells = Vec::new();
        for record in rdr.records() {
            let record = record?;
            keys.push(record[0].to_string());
            let mut row = BTreeMap::new();
            for (field, cell) in fields.iter().zip(record.iter().skip(1)) {
                let values: Vec<String> = cell
                    .split(VALUE_SEPARATOR)
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .map(str::to_string)
                    .collect();
                if !values.is_empty() {
                    row.insert(field.clone(), values);
                }
            }
            cells.push(row);
        }
        Self::new(keys, fields, cells)
    }

    /// The bundled ten-track music table.
    pub fn demo() -> Self {
        Self::read_tsv(DEMO_TSV.as_bytes()).expect("bundled demo table parses")
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn fields(&self) -> &[String] {
        &self.fields
    }

    /// Distinct `(record, field, value)` triples.
    pub fn triples(&self) -> BTreeSet<(String, String, String)> {
        self.keys
            .iter()
            .zip(&self.cells)
            .flat_map(|(k, row)| {
                row.iter().flat_map(move |(f, vs)| {
                    vs.iter().map(move |v| (k.clone(), f.clone(), v.clone()))
                })
            })
            .collect()
    }
}

fn first_duplicate(items: &[String]) -> Option<&String> {
    let mut seen = BTreeSet::new();
    items.iter().find(|x| !seen.insert(x.as_str()))
}

/// Rows are record keys, columns the sorted `field<sep>value` strings; each
/// present triple stores the algebra's existence value. Repeated triples
/// collapse to one entry.
pub fn explode(src: &TabularSource, separator: char, alg: &ValueAlgebra) -> Result<AssociativeArray> {
    if let Some(field) = src.fields.iter().find(|f| f.contains(separator)) {
        return Err(Error::AmbiguousKey {
            field: field.clone(),
            sep: separator,
        });
    }
    let triples = src.triples();
    let col_key = |f: &str, v: &str| format!("{f}{separator}{v}");
    let cols = KeySet::from_unsorted(triples.iter().map(|(_, f, v)| col_key(f, v)));
    let rows = KeySet::from_unsorted(src.keys.iter().cloned());
    let one = alg.existence_value();
    AssociativeArray::from_entries(
        rows,
        cols,
        alg.clone(),
        triples
            .iter()
            .map(|(k, f, v)| (k.clone(), col_key(f, v), one.clone())),
    )
}

/// Splits each stored column key at its first separator, giving back the
/// `(record, field, value)` triples.
pub fn collapse(arr: &AssociativeArray, separator: char) -> BTreeSet<(String, String, String)> {
    arr.entries()
        .filter_map(|(r, c, _)| {
            let (f, v) = c.split_once(separator)?;
            Some((r.to_string(), f.to_string(), v.to_string()))
        })
        .collect()
}

/// Column keys belonging to one field.
pub fn field_selector(arr: &AssociativeArray, field: &str, separator: char) -> Selector {
    let prefix = format!("{field}{separator}");
    Selector::Keys(
        arr.cols()
            .iter()
            .filter(|c| c.starts_with(&prefix))
            .map(str::to_string)
            .collect(),
    )
}

/// Incidence pair selected from two column groups of an exploded table.
#[derive(Clone, Debug)]
pub struct ColumnIncidence {
    pub pair: IncidencePair,
    /// Records lacking a value in either group.
    pub skipped_rows: Vec<String>,
}

/// Selects `out_field|*` columns as `E_out` and `in_field|*` columns as
/// `E_in`. Records with no value in either group are dropped and reported;
/// among the remaining records, more than one value in a group is a
/// hyperedge error.
pub fn incidence_pair_from_columns(
    exploded: &AssociativeArray,
    out_field: &str,
    in_field: &str,
    separator: char,
) -> Result<ColumnIncidence> {
    let mut groups = Vec::with_capacity(2);
    for field in [out_field, in_field] {
        let sel = field_selector(exploded, field, separator);
        if matches!(&sel, Selector::Keys(k) if k.is_empty()) {
            return Err(Error::Format(format!(
                "no `{field}{separator}` columns in the exploded table"
            )));
        }
        groups.push((field, exploded.subarray(&Selector::All, &sel)?));
    }

    let mut counts = vec![[0usize; 2]; exploded.rows().len()];
    for (g, (_, arr)) in groups.iter().enumerate() {
        for &(r, _) in arr.ranked_entries().keys() {
            counts[r][g] += 1;
        }
    }
    let mut kept = Vec::new();
    let mut skipped_rows = Vec::new();
    for (r, n) in counts.iter().enumerate() {
        let key = exploded.rows().key(r);
        if n[0] == 0 || n[1] == 0 {
            skipped_rows.push(key.to_string());
            continue;
        }
        for (g, (field, _)) in groups.iter().enumerate() {
            if n[g] > 1 {
                return Err(Error::Hyperedge {
                    row: key.to_string(),
                    field: field.to_string(),
                    count: n[g],
                });
            }
        }
        kept.push(key.to_string());
    }
    let rows = Selector::Keys(kept);
    let e_out = groups[0].1.subarray(&rows, &Selector::All)?;
    let e_in = groups[1].1.subarray(&rows, &Selector::All)?;
    Ok(ColumnIncidence {
        pair: IncidencePair::new(e_out, e_in)?,
        skipped_rows,
    })
}

/// Replaces every nonzero in each mapped column by the mapped value.
pub fn reweight(arr: &AssociativeArray, weights: &BTreeMap<String, Value>) -> Result<AssociativeArray> {
    arr.reweight(weights)
}

/// `Genre|Pop → 2`, `Genre|Rock → 3`.
pub fn demo_weights() -> BTreeMap<String, Value> {
    [
        ("Genre|Pop".to_string(), Value::Real(2.0)),
        ("Genre|Rock".to_string(), Value::Real(3.0)),
    ]
    .into()
}
