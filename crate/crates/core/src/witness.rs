//! Executable counterexample constructions and a harness that tests both
//! directions of the graph-construction equivalence for an algebra.
//!
//! Each necessary condition has a small graph that breaks `E_outᵀ E_in`
//! when the condition fails:
//!
//! * zero sums `v ⊕ w = 0`: two parallel edges `a → b` weighted `v`, `w`;
//!   the `(a, b)` cell folds to `v ⊕ w = 0` (missing nonzero);
//! * zero divisors `v ⊗ w = 0`: one self-loop at `a` weighted `v`, `w`;
//!   the `(a, a)` cell is `v ⊗ w = 0` (missing nonzero);
//! * non-annihilating 0: self-loops at `a` and `b` weighted `v`; the
//!   non-edge cell `(a, b)` is `(v ⊗ 0) ⊕ (0 ⊗ v) ≠ 0` (spurious nonzero).

use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::algebra::{check_conditions, table_algebra, ConditionReport, Rng, ValueAlgebra};
use crate::array::{AssociativeArray, KeySet, Mode};
use crate::error::{Error, Result};
use crate::graph::{
    adjacency, incidence_from_graph, random_graph, random_weighting, validate_adjacency, Edge,
    Graph, IncidencePair, RandomGraphConfig, Validation, ViolationKind, Weighting,
};
use crate::value::Value;

/// Where a counterexample came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// Proof construction for the numbered condition: 1 zero-sum-free,
    /// 2 no zero divisors, 3 annihilating zero.
    Lemma(u8),
    /// A random forward trial (only possible when a sampled check missed a
    /// violation).
    Trial(usize),
}

/// A graph whose `E_outᵀ E_in` product is not its adjacency array.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub origin: Origin,
    pub graph: Graph,
    pub pair: IncidencePair,
    pub product: AssociativeArray,
    pub violation: Validation,
    /// The cell the construction targets and the class it must show there.
    pub cell: (String, String),
    pub kind: ViolationKind,
}

impl Counterexample {
    /// Multiplies the pair densely and records the violation at `cell`;
    /// fails with `InvalidWitness` if that cell is valid.
    pub fn build(origin: Origin, graph: Graph, pair: IncidencePair, cell: (&str, &str)) -> Result<Self> {
        let product = adjacency(&pair, Mode::Dense)?;
        let violation = validate_adjacency(&product, &graph)?;
        let kind = violation
            .violation_at(cell.0, cell.1)
            .ok_or_else(|| Error::InvalidWitness(format!("no violation at ({}, {})", cell.0, cell.1)))?;
        Ok(Self {
            origin,
            graph,
            pair,
            product,
            violation,
            cell: (cell.0.to_string(), cell.1.to_string()),
            kind,
        })
    }

    /// Recomputes the dense product and its validation.
    pub fn replay(&self) -> Result<Validation> {
        validate_adjacency(&adjacency(&self.pair, Mode::Dense)?, &self.graph)
    }

    pub fn to_json(&self) -> Json {
        let (lemma, trial) = match self.origin {
            Origin::Lemma(n) => (Some(n), None),
            Origin::Trial(t) => (None, Some(t)),
        };
        json!({
            "lemma": lemma,
            "trial": trial,
            "graph": self.graph.to_json(),
            "pair": self.pair.to_json(),
            "product": self.product.to_json(),
            "violation": self.violation,
            "cell": [self.cell.0, self.cell.1],
            "kind": self.kind,
        })
    }
}

/// Rebuilds the incidence pair from a serialized counterexample, recomputes
/// the product, and returns the freshly serialized validation next to the
/// recorded one.
pub fn replay_serialized(doc: &Json, alg: &ValueAlgebra) -> Result<(String, String)> {
    let pair = IncidencePair::from_json(
        doc.get("pair").ok_or_else(|| Error::Format("counterexample lacks `pair`".into()))?,
        alg,
    )?;
    let graph = Graph::from_json(
        doc.get("graph").ok_or_else(|| Error::Format("counterexample lacks `graph`".into()))?,
    )?;
    let fresh = validate_adjacency(&adjacency(&pair, Mode::Dense)?, &graph)?;
    let recorded = doc
        .get("violation")
        .ok_or_else(|| Error::Format("counterexample lacks `violation`".into()))?;
    Ok((
        serde_json::to_value(&fresh)?.to_string(),
        recorded.to_string(),
    ))
}

fn vertices(names: &[&str]) -> KeySet {
    KeySet::from_unsorted(names.iter().copied())
}

fn require_nonzero(alg: &ValueAlgebra, vs: &[&Value]) -> Result<()> {
    for v in vs {
        if alg.is_zero(v) {
            return Err(Error::InvalidWitness(format!("{} is the algebra's 0", alg.render(v))));
        }
        if !alg.contains(v) {
            return Err(Error::InvalidWitness(format!("{} is not in the carrier", alg.render(v))));
        }
    }
    Ok(())
}

/// Two parallel edges `k1, k2: a → b`; `E_out` carries `v`, `w` and `E_in`
/// carries 1. Requires `v ⊕ w = 0` with `v, w ≠ 0`.
pub fn lemma1_instance(v: &Value, w: &Value, alg: &ValueAlgebra) -> Result<(Graph, IncidencePair)> {
    require_nonzero(alg, &[v, w])?;
    if !alg.is_zero(&alg.plus(v, w)) {
        return Err(Error::InvalidWitness(format!(
            "{} ⊕ {} is not 0",
            alg.render(v),
            alg.render(w)
        )));
    }
    let g = Graph::new(
        vec![Edge::new("k1", "a", "b"), Edge::new("k2", "a", "b")],
        vertices(&["a", "b"]),
        vertices(&["a", "b"]),
    )?;
    let weights = Weighting::PerEdge(
        [
            ("k1".to_string(), (v.clone(), alg.one())),
            ("k2".to_string(), (w.clone(), alg.one())),
        ]
        .into(),
    );
    let pair = incidence_from_graph(&g, alg, &weights)?;
    Ok((g, pair))
}

/// One self-loop `k: a → a` with `E_out(k, a) = v`, `E_in(k, a) = w`.
/// Requires `v ⊗ w = 0` with `v, w ≠ 0`.
pub fn lemma2_instance(v: &Value, w: &Value, alg: &ValueAlgebra) -> Result<(Graph, IncidencePair)> {
    require_nonzero(alg, &[v, w])?;
    if !alg.is_zero(&alg.times(v, w)) {
        return Err(Error::InvalidWitness(format!(
            "{} ⊗ {} is not 0",
            alg.render(v),
            alg.render(w)
        )));
    }
    let g = Graph::new(vec![Edge::new("k", "a", "a")], vertices(&["a"]), vertices(&["a"]))?;
    let weights = Weighting::PerEdge([("k".to_string(), (v.clone(), w.clone()))].into());
    let pair = incidence_from_graph(&g, alg, &weights)?;
    Ok((g, pair))
}

/// Self-loops `k1: a → a`, `k2: b → b`, all four incidence entries `v`.
/// Requires `v ≠ 0` with `v ⊗ 0 ≠ 0` or `0 ⊗ v ≠ 0`; the `(a, b)` cell is
/// then `(v ⊗ 0) ⊕ (0 ⊗ v)`, nonzero whenever ⊕ is zero-sum-free.
///
/// When `v` is 0 itself (only `0 ⊗ 0 ≠ 0` fails) the construction is a
/// single self-loop `k1: a → a` with unit weights and an isolated vertex
/// `b`: the `(b, b)` cell folds the lone term `0 ⊗ 0`.
pub fn lemma3_instance(v: &Value, alg: &ValueAlgebra) -> Result<(Graph, IncidencePair)> {
    let zero = alg.zero();
    if alg.is_zero(v) {
        if alg.is_zero(&alg.times(&zero, &zero)) {
            return Err(Error::InvalidWitness("0 ⊗ 0 is 0".into()));
        }
        let g = Graph::new(
            vec![Edge::new("k1", "a", "a")],
            vertices(&["a", "b"]),
            vertices(&["a", "b"]),
        )?;
        let pair = incidence_from_graph(&g, alg, &Weighting::Unit)?;
        return Ok((g, pair));
    }
    require_nonzero(alg, &[v])?;
    if alg.is_zero(&alg.times(v, &zero)) && alg.is_zero(&alg.times(&zero, v)) {
        return Err(Error::InvalidWitness(format!(
            "0 annihilates {} on both sides",
            alg.render(v)
        )));
    }
    let g = Graph::new(
        vec![Edge::new("k1", "a", "a"), Edge::new("k2", "b", "b")],
        vertices(&["a", "b"]),
        vertices(&["a", "b"]),
    )?;
    let pair = incidence_from_graph(&g, alg, &Weighting::Constant(v.clone()))?;
    Ok((g, pair))
}

/// Outcome of [`test_theorem`].
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub conditions: ConditionReport,
    pub trials: usize,
    pub seed: u64,
    /// Random instances whose product validated as an adjacency array.
    pub forward_trials: usize,
    pub counterexample: Option<Counterexample>,
}

impl TheoremVerdict {
    pub fn to_json(&self, alg: &ValueAlgebra) -> Json {
        json!({
            "algebra": alg.name(),
            "conditions": self.conditions.to_json(&**alg),
            "trials": self.trials,
            "seed": self.seed,
            "forward_trials": self.forward_trials,
            "counterexample": self.counterexample.as_ref().map(Counterexample::to_json),
        })
    }
}

/// Budget for the condition check inside [`test_theorem`].
pub const THEOREM_BUDGET: usize = 64;

/// Checks the three conditions. If they all hold, runs `trials` seeded
/// random graphs (at most 8 vertices, 16 edges, random nonzero weights)
/// through the dense product and validation. Otherwise builds the lemma
/// instance for the first failing condition.
pub fn test_theorem(alg: &ValueAlgebra, trials: usize, seed: u64) -> TheoremVerdict {
    let conditions = check_conditions(&**alg, THEOREM_BUDGET, seed);
    let counterexample = lemma_counterexample(alg, &conditions);
    if counterexample.is_some() {
        return TheoremVerdict {
            conditions,
            trials,
            seed,
            forward_trials: 0,
            counterexample,
        };
    }

    let mut forward_trials = 0;
    let mut counterexample = None;
    for t in 0..trials {
        let (graph, pair) = random_instance(alg, seed, t);
        let product = adjacency(&pair, Mode::Dense).expect("dense product of a well-formed pair");
        let violation = validate_adjacency(&product, &graph).expect("product is K_out × K_in");
        if violation.valid {
            forward_trials += 1;
            continue;
        }
        let first = &violation.violations[0];
        counterexample = Some(Counterexample {
            origin: Origin::Trial(t),
            cell: (first.row.clone(), first.col.clone()),
            kind: first.kind,
            graph,
            pair,
            product,
            violation,
        });
        break;
    }
    TheoremVerdict {
        conditions,
        trials,
        seed,
        forward_trials,
        counterexample,
    }
}

/// Trial `t` of a run seeded with `seed`; each trial has its own stream.
pub fn random_instance(alg: &ValueAlgebra, seed: u64, t: usize) -> (Graph, IncidencePair) {
    let mut rng = Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    let graph = random_graph(&mut rng, RandomGraphConfig::default());
    let weights = random_weighting(&graph, alg, &mut rng);
    let pair = incidence_from_graph(&graph, alg, &weights).expect("random weights are nonzero");
    (graph, pair)
}

fn lemma_counterexample(alg: &ValueAlgebra, report: &ConditionReport) -> Option<Counterexample> {
    let built = if let Some((v, w)) = &report.zero_sum_free.witness {
        lemma1_instance(v, w, alg)
            .and_then(|(g, p)| Counterexample::build(Origin::Lemma(1), g, p, ("a", "b")))
    } else if let Some((v, w)) = &report.no_zero_divisors.witness {
        lemma2_instance(v, w, alg)
            .and_then(|(g, p)| Counterexample::build(Origin::Lemma(2), g, p, ("a", "a")))
    } else if let Some(v) = &report.annihilator.witness {
        let cell = if alg.is_zero(v) { ("b", "b") } else { ("a", "b") };
        lemma3_instance(v, alg).and_then(|(g, p)| Counterexample::build(Origin::Lemma(3), g, p, cell))
    } else {
        return None;
    };
    Some(built.unwrap_or_else(|e| {
        panic!(
            "failing condition for `{}` did not yield a counterexample: {e}",
            alg.name()
        )
    }))
}

/// Number of identity-respecting operation-table pairs on `{0, 1, x}`.
pub const THREE_ELEMENT_TABLES: usize = 6561;

/// The `code`-th pair of operation tables on the carrier `{0, 1, x}` with 0
/// the ⊕-identity and 1 the ⊗-identity. The four free cells of each table
/// are read as base-3 digits of `code`, ⊕ cells first.
pub fn three_element_table(code: usize) -> ValueAlgebra {
    assert!(code < THREE_ELEMENT_TABLES, "table code out of range");
    let mut digits = [0usize; 8];
    let mut rest = code;
    for d in digits.iter_mut() {
        *d = rest % 3;
        rest /= 3;
    }
    // Elements: 0 = "0", 1 = "1", 2 = "x".
    let plus = vec![
        vec![0, 1, 2],
        vec![1, digits[0], digits[1]],
        vec![2, digits[2], digits[3]],
    ];
    let times = vec![
        vec![digits[4], 0, digits[5]],
        vec![0, 1, 2],
        vec![digits[6], 2, digits[7]],
    ];
    table_algebra(
        format!("table3#{code}"),
        vec!["0".into(), "1".into(), "x".into()],
        0,
        1,
        plus,
        times,
    )
    .expect("identity rows and columns are fixed")
}
