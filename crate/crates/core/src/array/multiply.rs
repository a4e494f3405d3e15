use std::collections::BTreeMap;

use super::{AssociativeArray, Mode};
use crate::error::{Error, Result};
use crate::value::Value;

impl AssociativeArray {
    /// ⊕.⊗ product: `C(k₁,k₂) = ⊕_{k₃} A(k₁,k₃) ⊗ B(k₃,k₂)`.
    ///
    /// The ⊕-fold runs left to right in ascending inner-key order, so the
    /// result is deterministic even when ⊕ is neither associative nor
    /// commutative. A fold with no terms is 0.
    pub fn multiply(&self, other: &AssociativeArray, mode: Mode) -> Result<AssociativeArray> {
        let alg = &self.algebra;
        if !alg.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch(
                alg.name().to_string(),
                other.algebra.name().to_string(),
            ));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "inner key sets differ: left has {} columns, right has {} rows",
                self.cols.len(),
                other.rows.len()
            )));
        }
        let entries = match mode {
            Mode::Dense => self.multiply_dense(other),
            Mode::Sparse => {
                if !alg.zero_annihilates() {
                    return Err(Error::SparseModeRejected(alg.name().to_string()));
                }
                self.multiply_sparse(other)
            }
        };
        Ok(AssociativeArray::from_ranked(
            self.rows.clone(),
            other.cols.clone(),
            alg.clone(),
            entries,
        ))
    }

    fn multiply_dense(&self, other: &AssociativeArray) -> BTreeMap<(usize, usize), Value> {
        let alg = &self.algebra;
        let (n, inner, m) = (self.rows.len(), self.cols.len(), other.cols.len());
        let zero = alg.zero();
        let dense = |arr: &AssociativeArray, rows: usize, cols: usize| {
            let mut grid = vec![vec![zero.clone(); cols]; rows];
            for (&(r, c), v) in arr.ranked_entries() {
                grid[r][c] = v.clone();
            }
            grid
        };
        let left = dense(self, n, inner);
        let right = dense(other, inner, m);
        let mut out = BTreeMap::new();
        #[allow(clippy::needless_range_loop)]
        for (i, row) in left.iter().enumerate() {
            for j in 0..m {
                let mut acc: Option<Value> = None;
                for (k, a) in row.iter().enumerate() {
                    let term = alg.times(a, &right[k][j]);
                    acc = Some(match acc {
                        None => term,
                        Some(s) => alg.plus(&s, &term),
                    });
                }
                if let Some(v) = acc {
                    if !alg.is_zero(&v) {
                        out.insert((i, j), v);
                    }
                }
            }
        }
        out
    }

    /// Row-streaming product. Inner keys of a row are visited in ascending
    /// order, so each output cell's fold sees its terms in the same order as
    /// the dense path (minus the zero terms).
    fn multiply_sparse(&self, other: &AssociativeArray) -> BTreeMap<(usize, usize), Value> {
        let alg = &self.algebra;
        let mut out = BTreeMap::new();
        for i in 0..self.rows.len() {
            let mut acc: BTreeMap<usize, Value> = BTreeMap::new();
            for (k, a) in self.row_entries(i) {
                for (j, b) in other.row_entries(k) {
                    let term = alg.times(a, b);
                    match acc.get_mut(&j) {
                        Some(s) => *s = alg.plus(s, &term),
                        None => {
                            acc.insert(j, term);
                        }
                    }
                }
            }
            for (j, v) in acc {
                if !alg.is_zero(&v) {
                    out.insert((i, j), v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_algebra, table_algebra};
    use crate::array::KeySet;

    fn keys(ks: &[&str]) -> KeySet {
        KeySet::from_unsorted(ks.iter().copied())
    }

    #[test]
    fn min_plus_single_inner_key() {
        let alg = builtin_algebra("min.plus").unwrap();
        let row = AssociativeArray::from_entries(
            keys(&["g"]),
            keys(&["t"]),
            alg.clone(),
            [("g", "t", Value::Real(2.0))],
        )
        .unwrap();
        let col = AssociativeArray::from_entries(
            keys(&["t"]),
            keys(&["w"]),
            alg,
            [("t", "w", Value::Real(1.0))],
        )
        .unwrap();
        for mode in [Mode::Sparse, Mode::Dense] {
            let c = row.multiply(&col, mode).unwrap();
            assert_eq!(c.get("g", "w").unwrap(), Value::Real(3.0));
        }
    }

    #[test]
    fn times_empty_is_empty() {
        let alg = builtin_algebra("plus.times").unwrap();
        let a = AssociativeArray::from_entries(
            keys(&["a", "b"]),
            keys(&["k"]),
            alg.clone(),
            [("a", "k", Value::Real(4.0))],
        )
        .unwrap();
        let z = AssociativeArray::empty(keys(&["k"]), keys(&["x", "y"]), alg);
        let c = a.multiply(&z, Mode::Dense).unwrap();
        assert_eq!(c.nnz(), 0);
        assert_eq!(c.rows().as_slice(), ["a", "b"]);
        assert_eq!(c.cols().as_slice(), ["x", "y"]);
    }

    #[test]
    fn empty_inner_key_set_folds_to_zero() {
        let alg = builtin_algebra("max.plus").unwrap();
        let a = AssociativeArray::empty(keys(&["a"]), KeySet::default(), alg.clone());
        let b = AssociativeArray::empty(KeySet::default(), keys(&["x"]), alg);
        assert_eq!(a.multiply(&b, Mode::Dense).unwrap().nnz(), 0);
    }

    #[test]
    fn shape_and_algebra_mismatch() {
        let alg = builtin_algebra("plus.times").unwrap();
        let a = AssociativeArray::empty(keys(&["a"]), keys(&["k1", "k2"]), alg.clone());
        let b = AssociativeArray::empty(keys(&["k1"]), keys(&["x"]), alg);
        assert!(matches!(a.multiply(&b, Mode::Dense), Err(Error::Shape(_))));
        let c = AssociativeArray::empty(
            keys(&["k1", "k2"]),
            keys(&["x"]),
            builtin_algebra("max.times").unwrap(),
        );
        assert!(matches!(a.multiply(&c, Mode::Dense), Err(Error::AlgebraMismatch(..))));
    }

    #[test]
    fn sparse_mode_rejected_without_annihilation() {
        // {0,1,2}: 2 ⊗ 0 = 2, so 0 does not annihilate.
        let plus = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
        let times = vec![vec![0, 0, 0], vec![0, 1, 2], vec![2, 2, 2]];
        let alg = table_algebra(
            "leaky",
            vec!["0".into(), "1".into(), "2".into()],
            0,
            1,
            plus,
            times,
        )
        .unwrap();
        let a = AssociativeArray::from_entries(
            keys(&["a"]),
            keys(&["k1", "k2"]),
            alg.clone(),
            [("a", "k1", Value::Elem(2))],
        )
        .unwrap();
        let b = AssociativeArray::from_entries(
            keys(&["k1", "k2"]),
            keys(&["x"]),
            alg,
            [("k2", "x", Value::Elem(1))],
        )
        .unwrap();
        assert!(matches!(a.multiply(&b, Mode::Sparse), Err(Error::SparseModeRejected(_))));
        // Dense mode sees 2⊗0 ⊕ 0⊗1 = 2 ⊕ 0 = 2 although no inner key is shared.
        let c = a.multiply(&b, Mode::Dense).unwrap();
        assert_eq!(c.get("a", "x").unwrap(), Value::Elem(2));
    }

    #[test]
    fn fold_order_is_ascending_inner_key() {
        // maxlen.concat ⊕ on equal-length strings is order-insensitive, so use
        // ⊗ order instead: each term is left ⊗ right.
        let alg = builtin_algebra("maxlen.concat").unwrap();
        let a = AssociativeArray::from_entries(
            keys(&["r"]),
            keys(&["k"]),
            alg.clone(),
            [("r", "k", Value::str("x"))],
        )
        .unwrap();
        let b = AssociativeArray::from_entries(
            keys(&["k"]),
            keys(&["c"]),
            alg,
            [("k", "c", Value::str("y"))],
        )
        .unwrap();
        let c = a.multiply(&b, Mode::Dense).unwrap();
        assert_eq!(c.get("r", "c").unwrap(), Value::str("xy"));
    }
}
