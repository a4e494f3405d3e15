use std::collections::HashMap;

use rand::{Rng as _, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use super::{decode_error, decode_generic, values_equal, Algebra, Rng, ValueAlgebra};
use crate::error::{Error, Result};
use crate::value::Value;

type BinOp = Box<dyn Fn(&Value, &Value) -> Value + Send + Sync>;
type EqFn = Box<dyn Fn(&Value, &Value) -> bool + Send + Sync>;
type Sampler = Box<dyn Fn(&mut Rng) -> Value + Send + Sync>;

/// Carrier of a user-supplied algebra.
pub enum CustomDomain {
    Finite(Vec<Value>),
    /// Generator of representative elements; 0 and 1 are always added.
    Sampled(Sampler),
}

impl CustomDomain {
    pub fn sampled<F>(f: F) -> Self
    where
        F: Fn(&mut Rng) -> Value + Send + Sync + 'static,
    {
        CustomDomain::Sampled(Box::new(f))
    }
}

struct CustomAlgebra {
    name: String,
    domain: CustomDomain,
    plus: BinOp,
    times: BinOp,
    zero: Value,
    one: Value,
    equals: Option<EqFn>,
}

impl Algebra for CustomAlgebra {
    fn name(&self) -> &str {
        &self.name
    }

    fn zero(&self) -> Value {
        self.zero.clone()
    }

    fn one(&self) -> Value {
        self.one.clone()
    }

    fn plus(&self, a: &Value, b: &Value) -> Value {
        (self.plus)(a, b)
    }

    fn times(&self, a: &Value, b: &Value) -> Value {
        (self.times)(a, b)
    }

    fn equals(&self, a: &Value, b: &Value) -> bool {
        match &self.equals {
            Some(eq) => eq(a, b),
            None => values_equal(a, b),
        }
    }

    fn elements(&self) -> Option<Vec<Value>> {
        match &self.domain {
            CustomDomain::Finite(els) => Some(els.clone()),
            CustomDomain::Sampled(_) => None,
        }
    }

    fn sample(&self, rng: &mut Rng) -> Value {
        match &self.domain {
            CustomDomain::Finite(els) => els[rng.gen_range(0..els.len())].clone(),
            CustomDomain::Sampled(f) => f(rng),
        }
    }

    fn contains(&self, v: &Value) -> bool {
        match &self.domain {
            CustomDomain::Finite(els) => els.iter().any(|e| self.equals(e, v)),
            CustomDomain::Sampled(_) => true,
        }
    }

    fn decode(&self, j: &Json) -> Result<Value> {
        decode_generic(&self.name, j)
    }
}

/// Number of generated elements used to vet identity laws on sampled carriers.
const IDENTITY_SAMPLE: usize = 64;

fn verify_identities(alg: &dyn Algebra) -> Result<()> {
    let elements = match alg.elements() {
        Some(els) => els,
        None => {
            let mut rng = Rng::seed_from_u64(0);
            let mut els = alg.landmarks();
            els.extend((0..IDENTITY_SAMPLE).map(|_| alg.sample(&mut rng)));
            els
        }
    };
    let malformed = |v: &Value, reason: &str| Error::MalformedAlgebra {
        name: alg.name().to_string(),
        element: alg.render(v),
        reason: reason.to_string(),
    };
    let (zero, one) = (alg.zero(), alg.one());
    if !alg.contains(&zero) {
        return Err(malformed(&zero, "0 is not in the carrier"));
    }
    if !alg.contains(&one) {
        return Err(malformed(&one, "1 is not in the carrier"));
    }
    for v in &elements {
        if !alg.equals(&alg.plus(v, &zero), v) || !alg.equals(&alg.plus(&zero, v), v) {
            return Err(malformed(v, "0 is not an identity for ⊕"));
        }
        if !alg.equals(&alg.times(v, &one), v) || !alg.equals(&alg.times(&one, v), v) {
            return Err(malformed(v, "1 is not an identity for ⊗"));
        }
    }
    if alg.elements().is_some() {
        for v in &elements {
            for w in &elements {
                if !alg.contains(&alg.plus(v, w)) || !alg.contains(&alg.times(v, w)) {
                    return Err(malformed(v, "operation leaves the carrier"));
                }
            }
        }
    }
    Ok(())
}

/// Builds an algebra from arbitrary operations after checking the identity
/// laws on the carrier (exhaustively when finite, on a seeded sample
/// otherwise).
pub fn custom_algebra<P, T>(
    name: impl Into<String>,
    domain: CustomDomain,
    plus: P,
    times: T,
    zero: Value,
    one: Value,
    equals: Option<EqFn>,
) -> Result<ValueAlgebra>
where
    P: Fn(&Value, &Value) -> Value + Send + Sync + 'static,
    T: Fn(&Value, &Value) -> Value + Send + Sync + 'static,
{
    let alg = CustomAlgebra {
        name: name.into(),
        domain,
        plus: Box::new(plus),
        times: Box::new(times),
        zero,
        one,
        equals,
    };
    verify_identities(&alg)?;
    Ok(ValueAlgebra::new(alg))
}

/// A finite algebra given by explicit operation tables over element indices.
#[derive(Clone, Debug)]
pub struct TableAlgebra {
    name: String,
    labels: Vec<String>,
    zero: usize,
    one: usize,
    plus: Vec<Vec<usize>>,
    times: Vec<Vec<usize>>,
}

impl TableAlgebra {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn index(v: &Value) -> usize {
        match v {
            Value::Elem(i) => *i,
            other => panic!("expected a table element, got {other}"),
        }
    }
}

impl Algebra for TableAlgebra {
    fn name(&self) -> &str {
        &self.name
    }

    fn zero(&self) -> Value {
        Value::Elem(self.zero)
    }

    fn one(&self) -> Value {
        Value::Elem(self.one)
    }

    fn plus(&self, a: &Value, b: &Value) -> Value {
        Value::Elem(self.plus[Self::index(a)][Self::index(b)])
    }

    fn times(&self, a: &Value, b: &Value) -> Value {
        Value::Elem(self.times[Self::index(a)][Self::index(b)])
    }

    fn elements(&self) -> Option<Vec<Value>> {
        Some((0..self.labels.len()).map(Value::Elem).collect())
    }

    fn sample(&self, rng: &mut Rng) -> Value {
        Value::Elem(rng.gen_range(0..self.labels.len()))
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Elem(i) if *i < self.labels.len())
    }

    fn encode(&self, v: &Value) -> Json {
        Json::from(self.labels[Self::index(v)].as_str())
    }

    fn decode(&self, j: &Json) -> Result<Value> {
        let label = j.as_str().ok_or_else(|| decode_error(&self.name, j))?;
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Value::Elem)
            .ok_or_else(|| decode_error(&self.name, j))
    }

    fn render(&self, v: &Value) -> String {
        match v {
            Value::Elem(i) if *i < self.labels.len() => self.labels[*i].clone(),
            other => other.to_string(),
        }
    }
}

/// Builds a finite table algebra over `labels`; `plus[i][j]` and `times[i][j]`
/// are element indices.
pub fn table_algebra(
    name: impl Into<String>,
    labels: Vec<String>,
    zero: usize,
    one: usize,
    plus: Vec<Vec<usize>>,
    times: Vec<Vec<usize>>,
) -> Result<ValueAlgebra> {
    let name = name.into();
    let n = labels.len();
    let malformed = |reason: String| Error::MalformedAlgebra {
        name: name.clone(),
        element: "-".to_string(),
        reason,
    };
    if n == 0 {
        return Err(malformed("empty carrier".into()));
    }
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if seen.insert(l.as_str(), i).is_some() {
            return Err(malformed(format!("duplicate element label `{l}`")));
        }
    }
    if zero >= n || one >= n {
        return Err(malformed("identity index out of range".into()));
    }
    for (op, table) in [("⊕", &plus), ("⊗", &times)] {
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(malformed(format!("{op} table is not {n}×{n}")));
        }
        if table.iter().flatten().any(|&c| c >= n) {
            return Err(malformed(format!("{op} table leaves the carrier")));
        }
    }
    let alg = TableAlgebra {
        name,
        labels,
        zero,
        one,
        plus,
        times,
    };
    verify_identities(&alg)?;
    Ok(ValueAlgebra::new(alg))
}

/// JSON description of a finite table algebra, as read by the CLI's
/// `--algebra-file`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub plus: Vec<Vec<String>>,
    pub times: Vec<Vec<String>>,
}

impl TableSpec {
    pub fn build(&self) -> Result<ValueAlgebra> {
        let index = |label: &str| {
            self.elements
                .iter()
                .position(|e| e == label)
                .ok_or_else(|| Error::MalformedAlgebra {
                    name: self.name.clone(),
                    element: label.to_string(),
                    reason: "label not among elements".into(),
                })
        };
        let table = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>> {
            rows.iter()
                .map(|row| row.iter().map(|l| index(l)).collect())
                .collect()
        };
        table_algebra(
            self.name.clone(),
            self.elements.clone(),
            index(&self.zero)?,
            index(&self.one)?,
            table(&self.plus)?,
            table(&self.times)?,
        )
    }
}
