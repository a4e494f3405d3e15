//! Value algebras `(V, ⊕, ⊗, 0, 1)`.
//!
//! Each algebra is a strategy behind the [`Algebra`] trait. Built-ins are
//! registered by name in an [`AlgebraRegistry`]; user-defined algebras are
//! built with [`custom_algebra`] or [`table_algebra`]. No associativity,
//! commutativity or distributivity is assumed anywhere in the crate.

mod conditions;
mod custom;
mod numeric;
mod registry;
mod sets;
mod strings;

use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::value::Value;

pub use conditions::{
    check_conditions, Condition, ConditionReport, Verdict, DEFAULT_BUDGET,
};
pub use custom::{custom_algebra, table_algebra, CustomDomain, TableAlgebra, TableSpec};
pub use numeric::{NumericAlgebra, NumericKind};
pub use registry::{builtin_algebra, AlgebraRegistry, BUILTIN_NAMES};
pub use sets::UnionIntersect;
pub use strings::{MaxLenConcat, MaxLexMinLex};

/// Deterministic generator used for every sampled check and random instance.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Absolute tolerance for comparing finite reals.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// A value algebra: a carrier with two closed binary operations and their
/// identities.
pub trait Algebra: Send + Sync {
    fn name(&self) -> &str;

    fn zero(&self) -> Value;

    fn one(&self) -> Value;

    /// ⊕
    fn plus(&self, a: &Value, b: &Value) -> Value;

    /// ⊗
    fn times(&self, a: &Value, b: &Value) -> Value;

    fn equals(&self, a: &Value, b: &Value) -> bool {
        values_equal(a, b)
    }

    /// The full carrier when it is finite and small enough to enumerate.
    fn elements(&self) -> Option<Vec<Value>> {
        None
    }

    /// Distinguished elements that every sampled check includes.
    fn landmarks(&self) -> Vec<Value> {
        vec![self.zero(), self.one()]
    }

    /// Draws a representative element of the carrier.
    fn sample(&self, rng: &mut Rng) -> Value;

    /// Membership in the carrier.
    fn contains(&self, v: &Value) -> bool;

    fn encode(&self, v: &Value) -> Json {
        encode_generic(v)
    }

    fn decode(&self, j: &Json) -> Result<Value>;

    fn render(&self, v: &Value) -> String {
        v.to_string()
    }

    /// Value recorded for "this cell exists" when exploding tables.
    fn existence_value(&self) -> Value {
        self.one()
    }
}

/// Shared handle to an algebra.
///
/// Cheap to clone. Two handles are the same algebra when their names match.
#[derive(Clone)]
pub struct ValueAlgebra {
    inner: Arc<dyn Algebra>,
    annihilates: Arc<OnceLock<bool>>,
}

impl ValueAlgebra {
    pub fn new<A: Algebra + 'static>(algebra: A) -> Self {
        Self::from_arc(Arc::new(algebra))
    }

    pub fn from_arc(inner: Arc<dyn Algebra>) -> Self {
        Self {
            inner,
            annihilates: Arc::new(OnceLock::new()),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        self.inner.equals(v, &self.inner.zero())
    }

    pub fn same_as(&self, other: &ValueAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.name() == other.inner.name()
    }

    /// Whether 0 annihilates ⊗, as reported by [`check_conditions`] with the
    /// default budget and seed. Computed once per handle.
    pub fn zero_annihilates(&self) -> bool {
        *self
            .annihilates
            .get_or_init(|| check_conditions(&**self, DEFAULT_BUDGET, 0).annihilator.holds())
    }

    pub fn random_nonzero(&self, rng: &mut Rng) -> Value {
        loop {
            let v = self.inner.sample(rng);
            if !self.is_zero(&v) {
                return v;
            }
        }
    }

    pub fn decode_member(&self, j: &Json) -> Result<Value> {
        let v = self.decode(j)?;
        if !self.contains(&v) {
            return Err(Error::Decode {
                algebra: self.name().to_string(),
                value: j.to_string(),
            });
        }
        Ok(v)
    }
}

impl Deref for ValueAlgebra {
    type Target = dyn Algebra;

    fn deref(&self) -> &Self::Target {
        self.inner.as_ref()
    }
}

impl fmt::Debug for ValueAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ValueAlgebra").field(&self.inner.name()).finish()
    }
}

/// Structural equality with the real tolerance applied to finite reals.
pub fn values_equal(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Real(x), Value::Real(y)) => (x - y).abs() <= REAL_TOLERANCE,
        _ => a == b,
    }
}

pub(crate) fn encode_generic(v: &Value) -> Json {
    match v {
        Value::Real(x) => {
            if x.fract() == 0.0 && x.abs() < 9.0e15 {
                Json::from(*x as i64)
            } else {
                Json::from(*x)
            }
        }
        Value::NegInf => Json::from("-inf"),
        Value::PosInf => Json::from("+inf"),
        Value::Int(i) => Json::from(*i),
        Value::Str(s) => Json::from(s.as_str()),
        Value::Set(s) => Json::Array(s.iter().map(|x| Json::from(x.as_str())).collect()),
        Value::Bottom => Json::Null,
        Value::Top => Json::Bool(true),
        Value::Elem(i) => Json::from(*i as u64),
    }
}

pub(crate) fn decode_error(alg: &str, j: &Json) -> Error {
    Error::Decode {
        algebra: alg.to_string(),
        value: j.to_string(),
    }
}

/// Best-effort decoding used by closure-backed algebras that have no
/// carrier-specific format.
pub(crate) fn decode_generic(alg: &str, j: &Json) -> Result<Value> {
    Ok(match j {
        Json::Null => Value::Bottom,
        Json::Bool(true) => Value::Top,
        Json::Number(n) => match n.as_i64() {
            Some(i) => Value::Int(i),
            None => Value::Real(n.as_f64().ok_or_else(|| decode_error(alg, j))?),
        },
        Json::String(s) if s == "-inf" => Value::NegInf,
        Json::String(s) if s == "+inf" => Value::PosInf,
        Json::String(s) => Value::Str(s.clone()),
        Json::Array(items) => Value::Set(
            items
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| decode_error(alg, j)))
                .collect::<Result<_>>()?,
        ),
        _ => return Err(decode_error(alg, j)),
    })
}
