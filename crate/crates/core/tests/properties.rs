mod common;

use common::{assert_no_stored_zero, keys, oracle_product, random_array, rng};
use proptest::prelude::*;
use semigraph::algebra::{builtin_algebra, check_conditions, BUILTIN_NAMES, DEFAULT_BUDGET};
use semigraph::array::{AssociativeArray, Mode, Selector};
use semigraph::ingest::{collapse, explode, TabularSource};

fn algebra_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(BUILTIN_NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_laws_hold_for_builtins(name in algebra_name(), seed in any::<u64>()) {
        let alg = builtin_algebra(name).unwrap();
        let mut rng = rng(seed);
        for _ in 0..32 {
            let v = alg.sample(&mut rng);
            prop_assert!(alg.contains(&v));
            prop_assert!(alg.equals(&alg.plus(&v, &alg.zero()), &v));
            prop_assert!(alg.equals(&alg.plus(&alg.zero(), &v), &v));
            prop_assert!(alg.equals(&alg.times(&v, &alg.one()), &v));
            prop_assert!(alg.equals(&alg.times(&alg.one(), &v), &v));
        }
    }

    #[test]
    fn witnesses_replay(name in algebra_name(), seed in any::<u64>()) {
        let alg = builtin_algebra(name).unwrap();
        let report = check_conditions(&*alg, 16, seed);
        if let Some((v, w)) = &report.zero_sum_free.witness {
            prop_assert!(alg.is_zero(&alg.plus(v, w)) && !alg.is_zero(v) && !alg.is_zero(w));
        }
        if let Some((v, w)) = &report.no_zero_divisors.witness {
            prop_assert!(alg.is_zero(&alg.times(v, w)) && !alg.is_zero(v) && !alg.is_zero(w));
        }
        if let Some(v) = &report.annihilator.witness {
            let z = alg.zero();
            prop_assert!(!alg.is_zero(&alg.times(v, &z)) || !alg.is_zero(&alg.times(&z, v)));
        }
    }

    #[test]
    fn transpose_is_an_involution(name in algebra_name(), seed in any::<u64>(), r in 0usize..7, c in 0usize..7) {
        let alg = builtin_algebra(name).unwrap();
        let arr = random_array(&alg, &keys("r", r), &keys("c", c), &mut rng(seed));
        let t = arr.transpose();
        assert_no_stored_zero(&t);
        for (k1, k2, v) in arr.entries() {
            prop_assert_eq!(&t.get(k2, k1).unwrap(), v);
        }
        prop_assert_eq!(t.nnz(), arr.nnz());
        prop_assert_eq!(t.transpose(), arr);
    }

    #[test]
    fn sparse_and_dense_products_agree(name in algebra_name(), seed in any::<u64>(),
                                       n in 0usize..6, k in 0usize..6, m in 0usize..6) {
        let alg = builtin_algebra(name).unwrap();
        prop_assume!(check_conditions(&*alg, DEFAULT_BUDGET, 0).annihilator.holds());
        let mut rng = rng(seed);
        let inner = keys("k", k);
        let a = random_array(&alg, &keys("r", n), &inner, &mut rng);
        let b = random_array(&alg, &inner, &keys("c", m), &mut rng);
        let sparse = a.multiply(&b, Mode::Sparse).unwrap();
        let dense = a.multiply(&b, Mode::Dense).unwrap();
        assert_no_stored_zero(&sparse);
        assert_no_stored_zero(&dense);
        prop_assert_eq!(&sparse, &dense);
        // Repeated evaluation is identical.
        prop_assert_eq!(sparse.to_json(), a.multiply(&b, Mode::Sparse).unwrap().to_json());
    }

    #[test]
    fn product_matches_oracle(name in prop::sample::select(vec!["plus.times", "min.plus", "max.min"]),
                              seed in any::<u64>(), n in 0usize..7, k in 0usize..7, m in 0usize..7) {
        let alg = builtin_algebra(name).unwrap();
        let mut rng = rng(seed);
        let inner = keys("k", k);
        let a = random_array(&alg, &keys("r", n), &inner, &mut rng);
        let b = random_array(&alg, &inner, &keys("c", m), &mut rng);
        let c = a.multiply(&b, Mode::Dense).unwrap();
        for (k1, k2, expected) in oracle_product(&a, &b) {
            prop_assert!(alg.equals(&c.get(&k1, &k2).unwrap(), &expected));
        }
    }

    #[test]
    fn elementwise_ops_keep_sparsity(name in algebra_name(), seed in any::<u64>(), r in 0usize..5, c in 0usize..5) {
        let alg = builtin_algebra(name).unwrap();
        let mut rng = rng(seed);
        let (rows, cols) = (keys("r", r), keys("c", c));
        let a = random_array(&alg, &rows, &cols, &mut rng);
        let b = random_array(&alg, &rows, &cols, &mut rng);
        assert_no_stored_zero(&a.elementwise_add(&b).unwrap());
        assert_no_stored_zero(&a.elementwise_multiply(&b, Mode::Dense).unwrap());
        let empty = AssociativeArray::empty(rows, cols, alg);
        prop_assert_eq!(a.elementwise_add(&empty).unwrap(), a.clone());
        let all = a.subarray(&Selector::All, &Selector::All).unwrap();
        prop_assert_eq!(all, a);
    }

    #[test]
    fn explode_is_pattern_faithful(cells in prop::collection::vec(
        prop::collection::vec(prop::collection::vec("[a-c]{1,2}", 0..3), 3), 0..8)) {
        let mut tsv = String::from("Id\tA\tB\tC\n");
        for (i, row) in cells.iter().enumerate() {
            let fields: Vec<String> = row.iter().map(|vs| vs.join(";")).collect();
            tsv += &format!("r{i}\t{}\n", fields.join("\t"));
        }
        let src = TabularSource::read_tsv(tsv.as_bytes()).unwrap();
        let arr = explode(&src, '|', &builtin_algebra("plus.times").unwrap()).unwrap();
        prop_assert_eq!(arr.nnz(), src.triples().len());
        prop_assert_eq!(collapse(&arr, '|'), src.triples());
    }
}
