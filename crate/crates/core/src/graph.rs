//! Directed multigraphs with keyed edges, their incidence arrays, and
//! adjacency arrays built as `E_outᵀ E_in`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::algebra::{Rng, ValueAlgebra};
use crate::array::{AssociativeArray, KeySet, Mode};
use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub key: String,
    pub source: String,
    pub target: String,
}

impl Edge {
    pub fn new(key: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

/// A directed multigraph. Parallel edges and self-loops are allowed; edge
/// keys are unique. Source and target vertex sets are kept separate and may
/// overlap or contain isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<Edge>,
    out_vertices: KeySet,
    in_vertices: KeySet,
}

impl Graph {
    pub fn new(mut edges: Vec<Edge>, out_vertices: KeySet, in_vertices: KeySet) -> Result<Self> {
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0].key == w[1].key) {
            return Err(Error::Graph(format!("duplicate edge key `{}`", w[0].key)));
        }
        for e in &edges {
            if !out_vertices.contains(&e.source) {
                return Err(Error::Graph(format!(
                    "edge `{}` leaves `{}`, which is not a source vertex",
                    e.key, e.source
                )));
            }
            if !in_vertices.contains(&e.target) {
                return Err(Error::Graph(format!(
                    "edge `{}` enters `{}`, which is not a target vertex",
                    e.key, e.target
                )));
            }
        }
        Ok(Self {
            edges,
            out_vertices,
            in_vertices,
        })
    }

    /// Vertex sets are the observed sources and targets.
    pub fn from_edges(edges: Vec<Edge>) -> Result<Self> {
        let out = KeySet::from_unsorted(edges.iter().map(|e| e.source.clone()));
        let inn = KeySet::from_unsorted(edges.iter().map(|e| e.target.clone()));
        Self::new(edges, out, inn)
    }

    /// Edges sorted by key.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_vertices(&self) -> &KeySet {
        &self.out_vertices
    }

    pub fn in_vertices(&self) -> &KeySet {
        &self.in_vertices
    }

    pub fn edge_keys(&self) -> KeySet {
        KeySet::new(self.edges.iter().map(|e| e.key.clone())).expect("edges are sorted and unique")
    }

    /// Same edge keys with every direction flipped.
    pub fn reversed(&self) -> Graph {
        Graph {
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(&e.key, &e.target, &e.source))
                .collect(),
            out_vertices: self.in_vertices.clone(),
            in_vertices: self.out_vertices.clone(),
        }
    }

    /// Number of edges for every connected (source, target) pair.
    pub fn edge_counts(&self) -> BTreeMap<(String, String), usize> {
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            *counts.entry((e.source.clone(), e.target.clone())).or_insert(0) += 1;
        }
        counts
    }

    pub fn edge_pattern(&self) -> BTreeSet<(String, String)> {
        self.edge_counts().into_keys().collect()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "edges": self.edges.iter().map(|e| json!([e.key, e.source, e.target])).collect::<Vec<_>>(),
            "out_vertices": self.out_vertices.as_slice(),
            "in_vertices": self.in_vertices.as_slice(),
        })
    }

    pub fn from_json(doc: &Json) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            edges: Vec<(String, String, String)>,
            out_vertices: Vec<String>,
            in_vertices: Vec<String>,
        }
        let doc: Doc = serde_json::from_value(doc.clone())?;
        Self::new(
            doc.edges.into_iter().map(|(k, s, t)| Edge::new(k, s, t)).collect(),
            KeySet::new(doc.out_vertices)?,
            KeySet::new(doc.in_vertices)?,
        )
    }

    /// Reads `edge_key<TAB>source<TAB>target[<TAB>w_out<TAB>w_in]` lines.
    /// Blank lines and lines starting with `#` are skipped. Weight tokens
    /// are parsed as JSON when possible, otherwise taken as strings.
    pub fn read_tsv<R: BufRead>(reader: R, alg: &ValueAlgebra) -> Result<(Graph, Weighting)> {
        let mut edges = Vec::new();
        let mut weights = BTreeMap::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let (key, src, tgt) = match fields.as_slice() {
                [k, s, t] | [k, s, t, _, _] => (*k, *s, *t),
                _ => {
                    return Err(Error::Format(format!(
                        "edge list line {}: expected 3 or 5 tab-separated fields, got {}",
                        lineno + 1,
                        fields.len()
                    )))
                }
            };
            edges.push(Edge::new(key, src, tgt));
            if let [_, _, _, w_out, w_in] = fields.as_slice() {
                let pair = (parse_weight(w_out, alg)?, parse_weight(w_in, alg)?);
                if alg.is_zero(&pair.0) || alg.is_zero(&pair.1) {
                    return Err(Error::InvalidWeight(key.to_string()));
                }
                weights.insert(key.to_string(), pair);
            }
        }
        Ok((Graph::from_edges(edges)?, Weighting::PerEdge(weights)))
    }
}

fn parse_weight(token: &str, alg: &ValueAlgebra) -> Result<Value> {
    let j = serde_json::from_str::<Json>(token).unwrap_or_else(|_| Json::from(token));
    alg.decode_member(&j)
}

/// Per-edge `(w_out, w_in)` assignment for incidence arrays.
#[derive(Clone, Debug, Default)]
pub enum Weighting {
    /// The algebra's 1 on both sides.
    #[default]
    Unit,
    /// The same value on every edge and side.
    Constant(Value),
    /// Explicit weights; edges not listed get the algebra's 1.
    PerEdge(BTreeMap<String, (Value, Value)>),
}

impl Weighting {
    fn weights(&self, key: &str, alg: &ValueAlgebra) -> (Value, Value) {
        match self {
            Weighting::Unit => (alg.one(), alg.one()),
            Weighting::Constant(v) => (v.clone(), v.clone()),
            Weighting::PerEdge(map) => map
                .get(key)
                .cloned()
                .unwrap_or_else(|| (alg.one(), alg.one())),
        }
    }
}

/// Source and target incidence arrays of one graph.
///
/// Both arrays share the edge key set as rows; every row holds exactly one
/// nonzero in each array.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidencePair {
    e_out: AssociativeArray,
    e_in: AssociativeArray,
}

impl IncidencePair {
    pub fn new(e_out: AssociativeArray, e_in: AssociativeArray) -> Result<Self> {
        if !e_out.algebra().same_as(e_in.algebra()) {
            return Err(Error::AlgebraMismatch(
                e_out.algebra().name().to_string(),
                e_in.algebra().name().to_string(),
            ));
        }
        if e_out.rows() != e_in.rows() {
            return Err(Error::Incidence(
                "source and target arrays have different edge keys".into(),
            ));
        }
        for (arr, side) in [(&e_out, "source"), (&e_in, "target")] {
            let mut per_row = vec![0usize; arr.rows().len()];
            for &(r, _) in arr.ranked_entries().keys() {
                per_row[r] += 1;
            }
            if let Some(r) = per_row.iter().position(|&n| n != 1) {
                return Err(Error::Incidence(format!(
                    "edge `{}` has {} {side} vertices",
                    arr.rows().key(r),
                    per_row[r]
                )));
            }
        }
        Ok(Self { e_out, e_in })
    }

    pub fn e_out(&self) -> &AssociativeArray {
        &self.e_out
    }

    pub fn e_in(&self) -> &AssociativeArray {
        &self.e_in
    }

    pub fn algebra(&self) -> &ValueAlgebra {
        self.e_out.algebra()
    }

    /// The graph whose edges the nonzero patterns describe.
    pub fn graph(&self) -> Graph {
        let endpoint = |arr: &AssociativeArray| -> BTreeMap<String, String> {
            arr.entries()
                .map(|(k, v, _)| (k.to_string(), v.to_string()))
                .collect()
        };
        let sources = endpoint(&self.e_out);
        let targets = endpoint(&self.e_in);
        let edges = sources
            .into_iter()
            .map(|(k, s)| {
                let t = targets[&k].clone();
                Edge::new(k, s, t)
            })
            .collect();
        Graph::new(edges, self.e_out.cols().clone(), self.e_in.cols().clone())
            .expect("pair invariants imply a well-formed graph")
    }

    pub fn to_json(&self) -> Json {
        json!({"e_out": self.e_out.to_json(), "e_in": self.e_in.to_json()})
    }

    pub fn from_json(doc: &Json, alg: &ValueAlgebra) -> Result<Self> {
        let part = |name: &str| {
            doc.get(name)
                .ok_or_else(|| Error::Format(format!("incidence pair lacks `{name}`")))
        };
        Self::new(
            AssociativeArray::from_json(part("e_out")?, alg)?,
            AssociativeArray::from_json(part("e_in")?, alg)?,
        )
    }
}

/// `e_out(k, source(k)) = w_out(k)` and `e_in(k, target(k)) = w_in(k)`.
pub fn incidence_from_graph(g: &Graph, alg: &ValueAlgebra, weighting: &Weighting) -> Result<IncidencePair> {
    let keys = g.edge_keys();
    let mut out_entries = Vec::with_capacity(g.edges.len());
    let mut in_entries = Vec::with_capacity(g.edges.len());
    for e in &g.edges {
        let (w_out, w_in) = weighting.weights(&e.key, alg);
        for w in [&w_out, &w_in] {
            if alg.is_zero(w) || !alg.contains(w) {
                return Err(Error::InvalidWeight(e.key.clone()));
            }
        }
        out_entries.push((e.key.as_str(), e.source.as_str(), w_out));
        in_entries.push((e.key.as_str(), e.target.as_str(), w_in));
    }
    IncidencePair::new(
        AssociativeArray::from_entries(keys.clone(), g.out_vertices.clone(), alg.clone(), out_entries)?,
        AssociativeArray::from_entries(keys, g.in_vertices.clone(), alg.clone(), in_entries)?,
    )
}

/// `E_outᵀ E_in`, a `K_out × K_in` array.
pub fn adjacency(pair: &IncidencePair, mode: Mode) -> Result<AssociativeArray> {
    pair.e_out.transpose().multiply(&pair.e_in, mode)
}

/// `E_inᵀ E_out`, a `K_in × K_out` array for the reversed graph.
pub fn reverse_adjacency(pair: &IncidencePair, mode: Mode) -> Result<AssociativeArray> {
    pair.e_in.transpose().multiply(&pair.e_out, mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Nonzero cell where no edge exists.
    SpuriousNonzero,
    /// Zero cell where an edge exists.
    MissingNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub row: String,
    pub col: String,
    pub kind: ViolationKind,
}

/// Outcome of checking an array against a graph's edge pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn violation_at(&self, row: &str, col: &str) -> Option<ViolationKind> {
        self.violations
            .iter()
            .find(|v| v.row == row && v.col == col)
            .map(|v| v.kind)
    }
}

/// Checks that `a(s, t) ≠ 0` exactly when `g` has an edge `s → t`.
pub fn validate_adjacency(a: &AssociativeArray, g: &Graph) -> Result<Validation> {
    if a.rows() != g.out_vertices() || a.cols() != g.in_vertices() {
        return Err(Error::Shape(
            "adjacency key sets must equal the graph's source and target vertex sets".into(),
        ));
    }
    let edges = g.edge_pattern();
    let cells = a.pattern();
    let mut violations: Vec<Violation> = cells
        .difference(&edges)
        .map(|(r, c)| Violation {
            row: r.clone(),
            col: c.clone(),
            kind: ViolationKind::SpuriousNonzero,
        })
        .chain(edges.difference(&cells).map(|(r, c)| Violation {
            row: r.clone(),
            col: c.clone(),
            kind: ViolationKind::MissingNonzero,
        }))
        .collect();
    violations.sort();
    Ok(Validation {
        valid: violations.is_empty(),
        violations,
    })
}

/// Bounds for seeded random graphs.
#[derive(Clone, Copy, Debug)]
pub struct RandomGraphConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for RandomGraphConfig {
    fn default() -> Self {
        Self {
            max_vertices: 8,
            max_edges: 16,
        }
    }
}

/// A graph with 1..=max_vertices vertices (all in both vertex sets) and
/// 0..=max_edges uniformly random edges.
pub fn random_graph(rng: &mut Rng, cfg: RandomGraphConfig) -> Graph {
    let n = rng.gen_range(1..=cfg.max_vertices.max(1));
    let m = rng.gen_range(0..=cfg.max_edges);
    exact_random_graph(rng, n, m)
}

/// Exactly `vertices` vertices and `edges` edges.
pub fn exact_random_graph(rng: &mut Rng, vertices: usize, edges: usize) -> Graph {
    let vertices = vertices.max(1);
    let names: Vec<String> = (0..vertices).map(|i| format!("v{i:02}")).collect();
    let edge_list = (0..edges)
        .map(|i| {
            let s = &names[rng.gen_range(0..vertices)];
            let t = &names[rng.gen_range(0..vertices)];
            Edge::new(format!("e{i:03}"), s.clone(), t.clone())
        })
        .collect();
    let vs = KeySet::new(names).expect("zero-padded names are ordered");
    Graph::new(edge_list, vs.clone(), vs).expect("random edges use declared vertices")
}

/// Independent random nonzero `(w_out, w_in)` for every edge.
pub fn random_weighting(g: &Graph, alg: &ValueAlgebra, rng: &mut Rng) -> Weighting {
    Weighting::PerEdge(
        g.edges
            .iter()
            .map(|e| (e.key.clone(), (alg.random_nonzero(rng), alg.random_nonzero(rng))))
            .collect(),
    )
}
