//! Sparse associative arrays `K₁ × K₂ → V`.
//!
//! Entries equal to the algebra's 0 are never stored; looking up an absent
//! pair yields 0. Arrays are immutable: every operation returns a new array.

mod json;
mod keyset;
mod multiply;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::ValueAlgebra;
use crate::error::{Error, Result};
use crate::value::Value;

pub use json::resolve_algebra;
pub use keyset::KeySet;
pub use render::render_table;

/// How array products treat zero operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Fold only over inner keys where both operands store an entry.
    /// Valid only when 0 annihilates ⊗.
    Sparse,
    /// Fold over every inner key, materializing zeros.
    Dense,
}

/// Key selection for [`AssociativeArray::subarray`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    All,
    Keys(Vec<String>),
    /// Closed interval `[lo, hi]` under the key order.
    Range(String, String),
}

impl Selector {
    pub fn range(lo: impl Into<String>, hi: impl Into<String>) -> Self {
        Selector::Range(lo.into(), hi.into())
    }

    fn select(&self, keys: &KeySet, axis: &'static str) -> Result<Vec<usize>> {
        match self {
            Selector::All => Ok((0..keys.len()).collect()),
            Selector::Keys(list) => {
                let mut ranks = list
                    .iter()
                    .map(|k| {
                        keys.rank(k).ok_or_else(|| Error::KeyDomain {
                            key: k.clone(),
                            axis,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                ranks.sort_unstable();
                ranks.dedup();
                Ok(ranks)
            }
            Selector::Range(lo, hi) => {
                if lo > hi {
                    return Err(Error::Selector(format!("range lower bound `{lo}` exceeds `{hi}`")));
                }
                Ok(keys.range(lo, hi).collect())
            }
        }
    }
}

/// A sparse map from (row key, column key) to algebra values.
#[derive(Clone)]
pub struct AssociativeArray {
    rows: KeySet,
    cols: KeySet,
    algebra: ValueAlgebra,
    /// Row-major: keyed by (row rank, column rank).
    entries: BTreeMap<(usize, usize), Value>,
    /// Column-major companion index, built on first use.
    by_col: OnceLock<Vec<Vec<usize>>>,
}

impl AssociativeArray {
    /// An array with no stored entries.
    pub fn empty(rows: KeySet, cols: KeySet, algebra: ValueAlgebra) -> Self {
        Self {
            rows,
            cols,
            algebra,
            entries: BTreeMap::new(),
            by_col: OnceLock::new(),
        }
    }

    /// Builds an array from `(row, col, value)` triples; later triples
    /// overwrite earlier ones and zero values are dropped.
    pub fn from_entries<I, R, C>(
        rows: KeySet,
        cols: KeySet,
        algebra: ValueAlgebra,
        triples: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (R, C, Value)>,
        R: AsRef<str>,
        C: AsRef<str>,
    {
        let mut arr = Self::empty(rows, cols, algebra);
        for (r, c, v) in triples {
            let pos = arr.position(r.as_ref(), c.as_ref())?;
            arr.store(pos, v);
        }
        Ok(arr)
    }

    pub(crate) fn from_ranked(
        rows: KeySet,
        cols: KeySet,
        algebra: ValueAlgebra,
        entries: BTreeMap<(usize, usize), Value>,
    ) -> Self {
        debug_assert!(entries.values().all(|v| !algebra.is_zero(v)));
        Self {
            rows,
            cols,
            algebra,
            entries,
            by_col: OnceLock::new(),
        }
    }

    fn store(&mut self, pos: (usize, usize), v: Value) {
        if self.algebra.is_zero(&v) {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, v);
        }
    }

    fn position(&self, k1: &str, k2: &str) -> Result<(usize, usize)> {
        let r = self.rows.rank(k1).ok_or_else(|| Error::KeyDomain {
            key: k1.to_string(),
            axis: "row",
        })?;
        let c = self.cols.rank(k2).ok_or_else(|| Error::KeyDomain {
            key: k2.to_string(),
            axis: "column",
        })?;
        Ok((r, c))
    }

    pub fn rows(&self) -> &KeySet {
        &self.rows
    }

    pub fn cols(&self) -> &KeySet {
        &self.cols
    }

    pub fn algebra(&self) -> &ValueAlgebra {
        &self.algebra
    }

    pub fn get(&self, k1: &str, k2: &str) -> Result<Value> {
        let pos = self.position(k1, k2)?;
        Ok(self.value_at(pos))
    }

    pub(crate) fn value_at(&self, pos: (usize, usize)) -> Value {
        self.entries
            .get(&pos)
            .cloned()
            .unwrap_or_else(|| self.algebra.zero())
    }

    /// Returns a copy with `(k1, k2)` set to `v`; setting 0 removes the entry.
    pub fn set(&self, k1: &str, k2: &str, v: Value) -> Result<Self> {
        let pos = self.position(k1, k2)?;
        let mut out = self.clone();
        out.by_col = OnceLock::new();
        out.store(pos, v);
        Ok(out)
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, &Value)> + '_ {
        self.entries
            .iter()
            .map(|(&(r, c), v)| (self.rows.key(r), self.cols.key(c), v))
    }

    pub(crate) fn ranked_entries(&self) -> &BTreeMap<(usize, usize), Value> {
        &self.entries
    }

    /// Stored entries of one row, ascending by column.
    pub(crate) fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &Value)> + '_ {
        self.entries
            .range((r, 0)..(r + 1, 0))
            .map(|(&(_, c), v)| (c, v))
    }

    /// Row ranks with a stored entry in column `c`, ascending.
    pub fn column_rows(&self, c: usize) -> &[usize] {
        let index = self.by_col.get_or_init(|| {
            let mut index = vec![Vec::new(); self.cols.len()];
            for &(r, c) in self.entries.keys() {
                index[c].push(r);
            }
            index
        });
        &index[c]
    }

    /// Set of `(row, col)` pairs holding a nonzero.
    pub fn pattern(&self) -> BTreeSet<(String, String)> {
        self.entries()
            .map(|(r, c, _)| (r.to_string(), c.to_string()))
            .collect()
    }

    /// Same key sets and cellwise equal under the algebra's equality.
    pub fn approx_eq(&self, other: &AssociativeArray) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.algebra.same_as(&other.algebra)
            && self.entries.len() == other.entries.len()
            && self.entries.iter().all(|(pos, v)| {
                other
                    .entries
                    .get(pos)
                    .is_some_and(|w| self.algebra.equals(v, w))
            })
    }

    /// `Aᵀ(k₂, k₁) = A(k₁, k₂)`.
    pub fn transpose(&self) -> Self {
        let mut entries = BTreeMap::new();
        for c in 0..self.cols.len() {
            for &r in self.column_rows(c) {
                entries.insert((c, r), self.entries[&(r, c)].clone());
            }
        }
        Self::from_ranked(self.cols.clone(), self.rows.clone(), self.algebra.clone(), entries)
    }

    /// Restricts the key sets and keeps the entries inside the selection.
    pub fn subarray(&self, rows: &Selector, cols: &Selector) -> Result<Self> {
        let row_ranks = rows.select(&self.rows, "row")?;
        let col_ranks = cols.select(&self.cols, "column")?;
        let row_map: BTreeMap<usize, usize> =
            row_ranks.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let col_map: BTreeMap<usize, usize> =
            col_ranks.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let entries = self
            .entries
            .iter()
            .filter_map(|(&(r, c), v)| Some(((*row_map.get(&r)?, *col_map.get(&c)?), v.clone())))
            .collect();
        let pick = |keys: &KeySet, ranks: &[usize]| {
            KeySet::new(ranks.iter().map(|&i| keys.key(i).to_string()))
                .expect("subsequence of an ordered key set is ordered")
        };
        Ok(Self::from_ranked(
            pick(&self.rows, &row_ranks),
            pick(&self.cols, &col_ranks),
            self.algebra.clone(),
            entries,
        ))
    }

    /// Same keys, reinterpreted under another algebra. Every stored value
    /// must lie in the new carrier and stay nonzero there.
    pub fn with_algebra(&self, algebra: &ValueAlgebra) -> Result<Self> {
        for v in self.entries.values() {
            if !algebra.contains(v) || algebra.is_zero(v) {
                return Err(Error::Decode {
                    algebra: algebra.name().to_string(),
                    value: self.algebra.render(v),
                });
            }
        }
        Ok(Self::from_ranked(
            self.rows.clone(),
            self.cols.clone(),
            algebra.clone(),
            self.entries.clone(),
        ))
    }

    /// Replaces every stored value of each mapped column by the mapped value.
    pub fn reweight(&self, weights: &BTreeMap<String, Value>) -> Result<Self> {
        let mut by_rank = BTreeMap::new();
        for (col, w) in weights {
            let c = self.cols.rank(col).ok_or_else(|| Error::KeyDomain {
                key: col.clone(),
                axis: "column",
            })?;
            if self.algebra.is_zero(w) || !self.algebra.contains(w) {
                return Err(Error::InvalidWeight(col.clone()));
            }
            by_rank.insert(c, w);
        }
        let entries = self
            .entries
            .iter()
            .map(|(&(r, c), v)| ((r, c), by_rank.get(&c).map_or_else(|| v.clone(), |w| (*w).clone())))
            .collect();
        Ok(Self::from_ranked(
            self.rows.clone(),
            self.cols.clone(),
            self.algebra.clone(),
            entries,
        ))
    }

    fn check_same_shape(&self, other: &AssociativeArray) -> Result<()> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch(
                self.algebra.name().to_string(),
                other.algebra.name().to_string(),
            ));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(
                "element-wise operands need identical row and column key sets".into(),
            ));
        }
        Ok(())
    }

    /// Cellwise ⊕ over the union of the stored patterns.
    pub fn elementwise_add(&self, other: &AssociativeArray) -> Result<Self> {
        self.check_same_shape(other)?;
        let alg = &self.algebra;
        let positions: BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        let entries = positions
            .into_iter()
            .filter_map(|&pos| {
                let v = alg.plus(&self.value_at(pos), &other.value_at(pos));
                (!alg.is_zero(&v)).then_some((pos, v))
            })
            .collect();
        Ok(Self::from_ranked(self.rows.clone(), self.cols.clone(), alg.clone(), entries))
    }

    /// Cellwise ⊗: over the full key grid in dense mode, over the
    /// intersection of the stored patterns in sparse mode.
    pub fn elementwise_multiply(&self, other: &AssociativeArray, mode: Mode) -> Result<Self> {
        self.check_same_shape(other)?;
        let alg = &self.algebra;
        let mut entries = BTreeMap::new();
        match mode {
            Mode::Sparse => {
                if !alg.zero_annihilates() {
                    return Err(Error::SparseModeRejected(alg.name().to_string()));
                }
                for (pos, v) in &self.entries {
                    if let Some(w) = other.entries.get(pos) {
                        let p = alg.times(v, w);
                        if !alg.is_zero(&p) {
                            entries.insert(*pos, p);
                        }
                    }
                }
            }
            Mode::Dense => {
                for r in 0..self.rows.len() {
                    for c in 0..self.cols.len() {
                        let p = alg.times(&self.value_at((r, c)), &other.value_at((r, c)));
                        if !alg.is_zero(&p) {
                            entries.insert((r, c), p);
                        }
                    }
                }
            }
        }
        Ok(Self::from_ranked(self.rows.clone(), self.cols.clone(), alg.clone(), entries))
    }
}

impl fmt::Debug for AssociativeArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AssociativeArray")
            .field("algebra", &self.algebra.name())
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field(
                "entries",
                &self
                    .entries()
                    .map(|(r, c, v)| (r, c, self.algebra.render(v)))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialEq for AssociativeArray {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin_algebra;

    fn keys(ks: &[&str]) -> KeySet {
        KeySet::from_unsorted(ks.iter().copied())
    }

    fn r(x: f64) -> Value {
        Value::Real(x)
    }

    fn sample(alg: &str) -> AssociativeArray {
        AssociativeArray::from_entries(
            keys(&["a", "b"]),
            keys(&["x", "y", "z"]),
            builtin_algebra(alg).unwrap(),
            [("a", "x", r(5.0)), ("b", "z", r(2.0))],
        )
        .unwrap()
    }

    fn assert_no_stored_zero(arr: &AssociativeArray) {
        for (_, _, v) in arr.entries() {
            assert!(!arr.algebra().is_zero(v));
        }
    }

    #[test]
    fn get_returns_stored_or_algebra_zero() {
        let arr = sample("plus.times");
        assert_eq!(arr.get("a", "x").unwrap(), r(5.0));
        assert_eq!(arr.get("a", "y").unwrap(), r(0.0));
        let arr = sample("min.plus");
        assert_eq!(arr.get("a", "y").unwrap(), Value::PosInf);
    }

    #[test]
    fn get_outside_key_set() {
        let arr = sample("plus.times");
        assert!(matches!(arr.get("q", "x"), Err(Error::KeyDomain { axis: "row", .. })));
        assert!(matches!(arr.get("a", "q"), Err(Error::KeyDomain { axis: "column", .. })));
    }

    #[test]
    fn set_round_trips_and_zero_deletes() {
        let arr = sample("plus.times");
        let arr2 = arr.set("b", "y", r(7.0)).unwrap();
        assert_eq!(arr2.get("b", "y").unwrap(), r(7.0));
        assert_eq!(arr.get("b", "y").unwrap(), r(0.0), "original untouched");
        let arr3 = arr2.set("a", "x", r(0.0)).unwrap();
        assert_eq!(arr3.get("a", "x").unwrap(), r(0.0));
        assert_eq!(arr3.nnz(), 2);
        assert_no_stored_zero(&arr3);
        assert!(arr.set("nope", "x", r(1.0)).is_err());
    }

    #[test]
    fn from_entries_drops_zero() {
        let arr = AssociativeArray::from_entries(
            keys(&["a"]),
            keys(&["x"]),
            builtin_algebra("min.plus").unwrap(),
            [("a", "x", Value::PosInf)],
        )
        .unwrap();
        assert_eq!(arr.nnz(), 0);
    }

    #[test]
    fn transpose_definition() {
        let arr = AssociativeArray::from_entries(
            keys(&["r"]),
            keys(&["c1", "c2"]),
            builtin_algebra("plus.times").unwrap(),
            [("r", "c1", r(2.0)), ("r", "c2", r(3.0))],
        )
        .unwrap();
        let t = arr.transpose();
        assert_eq!(t.rows().as_slice(), ["c1", "c2"]);
        assert_eq!(t.cols().as_slice(), ["r"]);
        assert_eq!(t.get("c1", "r").unwrap(), r(2.0));
        assert_eq!(t.get("c2", "r").unwrap(), r(3.0));
        assert_eq!(t.transpose(), arr);
    }

    #[test]
    fn transpose_of_empty() {
        let arr = AssociativeArray::empty(
            keys(&["a", "b"]),
            keys(&["x"]),
            builtin_algebra("plus.times").unwrap(),
        );
        let t = arr.transpose();
        assert_eq!(t.nnz(), 0);
        assert_eq!(t.rows().as_slice(), ["x"]);
        assert_eq!(t.cols().as_slice(), ["a", "b"]);
    }

    #[test]
    fn subarray_selectors() {
        let arr = sample("plus.times");
        assert_eq!(arr.subarray(&Selector::All, &Selector::All).unwrap(), arr);
        let s = arr
            .subarray(&Selector::All, &Selector::range("y", "z"))
            .unwrap();
        assert_eq!(s.cols().as_slice(), ["y", "z"]);
        assert_eq!(s.nnz(), 1);
        let none = arr
            .subarray(&Selector::All, &Selector::range("p", "q"))
            .unwrap();
        assert_eq!(none.nnz(), 0);
        assert!(none.cols().is_empty());
        assert!(none.algebra().same_as(arr.algebra()));
        assert!(matches!(
            arr.subarray(&Selector::All, &Selector::range("z", "a")),
            Err(Error::Selector(_))
        ));
        let picked = arr
            .subarray(&Selector::Keys(vec!["b".into()]), &Selector::All)
            .unwrap();
        assert_eq!(picked.get("b", "z").unwrap(), r(2.0));
    }

    #[test]
    fn elementwise_add_unions_patterns() {
        let alg = builtin_algebra("plus.times").unwrap();
        let a = AssociativeArray::from_entries(
            keys(&["a"]),
            keys(&["x", "y"]),
            alg.clone(),
            [("a", "x", r(2.0))],
        )
        .unwrap();
        let b = AssociativeArray::from_entries(
            keys(&["a"]),
            keys(&["x", "y"]),
            alg.clone(),
            [("a", "x", r(3.0)), ("a", "y", r(1.0))],
        )
        .unwrap();
        let sum = a.elementwise_add(&b).unwrap();
        assert_eq!(sum.get("a", "x").unwrap(), r(5.0));
        assert_eq!(sum.get("a", "y").unwrap(), r(1.0));
        let empty = AssociativeArray::empty(a.rows().clone(), a.cols().clone(), alg);
        assert_eq!(a.elementwise_add(&empty).unwrap(), a);
    }

    #[test]
    fn elementwise_multiply_intersects_sets() {
        let alg = builtin_algebra("union.intersect").unwrap();
        let a = AssociativeArray::from_entries(
            keys(&["d"]),
            keys(&["w"]),
            alg.clone(),
            [("d", "w", Value::set(["a", "b"]))],
        )
        .unwrap();
        let b = AssociativeArray::from_entries(
            keys(&["d"]),
            keys(&["w"]),
            alg,
            [("d", "w", Value::set(["b", "c"]))],
        )
        .unwrap();
        let p = a.elementwise_multiply(&b, Mode::Sparse).unwrap();
        assert_eq!(p.get("d", "w").unwrap(), Value::set(["b"]));
        assert_eq!(a.elementwise_multiply(&b, Mode::Dense).unwrap(), p);
    }

    #[test]
    fn elementwise_shape_and_algebra_errors() {
        let a = sample("plus.times");
        let b = sample("max.times");
        assert!(matches!(a.elementwise_add(&b), Err(Error::AlgebraMismatch(..))));
        let c = a.subarray(&Selector::All, &Selector::range("x", "y")).unwrap();
        assert!(matches!(a.elementwise_add(&c), Err(Error::Shape(_))));
    }

    #[test]
    fn reweight_keeps_pattern() {
        let arr = sample("plus.times");
        let w: BTreeMap<_, _> = [("z".to_string(), r(3.0))].into();
        let out = arr.reweight(&w).unwrap();
        assert_eq!(out.pattern(), arr.pattern());
        assert_eq!(out.get("b", "z").unwrap(), r(3.0));
        assert_eq!(arr.reweight(&BTreeMap::new()).unwrap(), arr);
        let zero: BTreeMap<_, _> = [("z".to_string(), r(0.0))].into();
        assert!(matches!(arr.reweight(&zero), Err(Error::InvalidWeight(_))));
    }
}
