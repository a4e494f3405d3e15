use std::collections::BTreeSet;

use serde_json::{json, Value as Json};

use super::{AssociativeArray, KeySet};
use crate::algebra::{AlgebraRegistry, UnionIntersect, ValueAlgebra};
use crate::error::{Error, Result};

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn string_list(doc: &Json, field: &str) -> Result<Vec<String>> {
    doc.get(field)
        .and_then(Json::as_array)
        .ok_or_else(|| format_err(format!("array document lacks `{field}` list")))?
        .iter()
        .map(|k| {
            k.as_str()
                .map(str::to_string)
                .ok_or_else(|| format_err(format!("non-string key in `{field}`")))
        })
        .collect()
}

/// Picks the algebra named by an array document. For `union.intersect` the
/// universe is the set of all members observed in the entries.
pub fn resolve_algebra(doc: &Json, registry: &AlgebraRegistry) -> Result<ValueAlgebra> {
    let name = doc
        .get("algebra")
        .and_then(Json::as_str)
        .ok_or_else(|| format_err("array document lacks `algebra`"))?;
    if name == "union.intersect" {
        let mut universe = BTreeSet::new();
        for entry in doc.get("entries").and_then(Json::as_array).into_iter().flatten() {
            if let Some(items) = entry.get(2).and_then(Json::as_array) {
                universe.extend(items.iter().filter_map(Json::as_str).map(str::to_string));
            }
        }
        return Ok(ValueAlgebra::new(UnionIntersect::new(universe)));
    }
    registry.get(name)
}

impl AssociativeArray {
    /// `{rows, cols, algebra, entries: [[row, col, value], ...]}` with
    /// entries in row-major order.
    pub fn to_json(&self) -> Json {
        let alg = &self.algebra;
        json!({
            "rows": self.rows.as_slice(),
            "cols": self.cols.as_slice(),
            "algebra": alg.name(),
            "entries": self
                .entries()
                .map(|(r, c, v)| json!([r, c, alg.encode(v)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(doc: &Json, algebra: &ValueAlgebra) -> Result<Self> {
        let name = doc.get("algebra").and_then(Json::as_str);
        if name != Some(algebra.name()) {
            return Err(Error::AlgebraMismatch(
                name.unwrap_or("<missing>").to_string(),
                algebra.name().to_string(),
            ));
        }
        let rows = KeySet::new(string_list(doc, "rows")?)?;
        let cols = KeySet::new(string_list(doc, "cols")?)?;
        let entries = doc
            .get("entries")
            .and_then(Json::as_array)
            .ok_or_else(|| format_err("array document lacks `entries`"))?;
        let mut triples = Vec::with_capacity(entries.len());
        for e in entries {
            let (r, c, v) = match e.as_array().map(Vec::as_slice) {
                Some([Json::String(r), Json::String(c), v]) => (r, c, v),
                _ => return Err(format_err(format!("malformed entry {e}"))),
            };
            triples.push((r.as_str(), c.as_str(), algebra.decode_member(v)?));
        }
        Self::from_entries(rows, cols, algebra.clone(), triples)
    }
}
