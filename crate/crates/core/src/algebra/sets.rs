use std::collections::BTreeSet;

use rand::Rng as _;
use serde_json::Value as Json;

use super::{decode_error, Algebra, Rng};
use crate::error::Result;
use crate::value::Value;

/// Largest universe whose power set is enumerated as a finite carrier.
const ENUMERABLE_UNIVERSE: usize = 10;

/// Finite subsets of a universe `U` with ⊕ = ∪ and ⊗ = ∩; 0 = ∅, 1 = U.
#[derive(Clone, Debug)]
pub struct UnionIntersect {
    universe: BTreeSet<String>,
}

impl UnionIntersect {
    pub fn new<I, S>(universe: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            universe: universe.into_iter().map(Into::into).collect(),
        }
    }

    pub fn universe(&self) -> &BTreeSet<String> {
        &self.universe
    }

    fn members(v: &Value) -> &BTreeSet<String> {
        match v {
            Value::Set(s) => s,
            other => panic!("expected a set, got {other}"),
        }
    }
}

impl Default for UnionIntersect {
    fn default() -> Self {
        Self::new(["a", "b", "c"])
    }
}

impl Algebra for UnionIntersect {
    fn name(&self) -> &str {
        "union.intersect"
    }

    fn zero(&self) -> Value {
        Value::Set(BTreeSet::new())
    }

    fn one(&self) -> Value {
        Value::Set(self.universe.clone())
    }

    fn plus(&self, a: &Value, b: &Value) -> Value {
        Value::Set(Self::members(a).union(Self::members(b)).cloned().collect())
    }

    fn times(&self, a: &Value, b: &Value) -> Value {
        Value::Set(
            Self::members(a)
                .intersection(Self::members(b))
                .cloned()
                .collect(),
        )
    }

    /// Power set in bitmask order over the sorted universe:
    /// ∅, {u0}, {u1}, {u0,u1}, ...
    fn elements(&self) -> Option<Vec<Value>> {
        let items: Vec<&String> = self.universe.iter().collect();
        if items.len() > ENUMERABLE_UNIVERSE {
            return None;
        }
        Some(
            (0u32..(1 << items.len()))
                .map(|mask| {
                    Value::Set(
                        items
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask & (1 << i) != 0)
                            .map(|(_, s)| (*s).clone())
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    fn sample(&self, rng: &mut Rng) -> Value {
        Value::Set(
            self.universe
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect(),
        )
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Set(s) if s.is_subset(&self.universe))
    }

    fn decode(&self, j: &Json) -> Result<Value> {
        let items = j.as_array().ok_or_else(|| decode_error(self.name(), j))?;
        let set = items
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| decode_error(self.name(), j))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        if set.is_subset(&self.universe) {
            Ok(Value::Set(set))
        } else {
            Err(decode_error(self.name(), j))
        }
    }
}
