#![allow(dead_code)]

use rand::{Rng as _, SeedableRng};
use semigraph::algebra::{Rng, ValueAlgebra};
use semigraph::array::{AssociativeArray, KeySet};
use semigraph::Value;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

pub fn keys(prefix: &str, n: usize) -> KeySet {
    KeySet::from_unsorted((0..n).map(|i| format!("{prefix}{i}")))
}

/// Random array over the given key sets; each cell is present with
/// probability 1/2 and holds an arbitrary carrier sample (zeros included,
/// which `from_entries` drops).
pub fn random_array(alg: &ValueAlgebra, rows: &KeySet, cols: &KeySet, rng: &mut Rng) -> AssociativeArray {
    let mut triples = Vec::new();
    for r in rows.iter() {
        for c in cols.iter() {
            if rng.gen_bool(0.5) {
                triples.push((r.to_string(), c.to_string(), alg.sample(rng)));
            }
        }
    }
    AssociativeArray::from_entries(rows.clone(), cols.clone(), alg.clone(), triples).unwrap()
}

/// Definition-level product: for every output cell, fold
/// `a.get(k1,k3) ⊗ b.get(k3,k2)` over all inner keys in ascending order,
/// starting from the first term. Uses only `get`, never the library's
/// multiplication code.
pub fn oracle_product(a: &AssociativeArray, b: &AssociativeArray) -> Vec<(String, String, Value)> {
    let alg = a.algebra();
    let mut out = Vec::new();
    for k1 in a.rows().iter() {
        for k2 in b.cols().iter() {
            let mut acc: Option<Value> = None;
            for k3 in a.cols().iter() {
                let term = alg.times(&a.get(k1, k3).unwrap(), &b.get(k3, k2).unwrap());
                acc = Some(match acc {
                    None => term,
                    Some(s) => alg.plus(&s, &term),
                });
            }
            out.push((k1.to_string(), k2.to_string(), acc.unwrap_or_else(|| alg.zero())));
        }
    }
    out
}

pub fn assert_no_stored_zero(arr: &AssociativeArray) {
    for (r, c, v) in arr.entries() {
        assert!(!arr.algebra().is_zero(v), "stored zero at ({r}, {c})");
    }
}
