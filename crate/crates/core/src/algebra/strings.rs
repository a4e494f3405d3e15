use std::cmp::Ordering;

use rand::Rng as _;
use serde_json::Value as Json;

use super::{decode_error, Algebra, Rng};
use crate::error::Result;
use crate::value::Value;

const ALPHABET: &[u8] = b"abc";

fn random_word(rng: &mut Rng, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())] as char)
        .collect()
}

/// Strings under lexicographic order with ⊕ = max and ⊗ = min.
/// A bottom element is 0 and a top element is 1.
#[derive(Clone, Debug, Default)]
pub struct MaxLexMinLex;

impl Algebra for MaxLexMinLex {
    fn name(&self) -> &str {
        "maxlex.minlex"
    }

    fn zero(&self) -> Value {
        Value::Bottom
    }

    fn one(&self) -> Value {
        Value::Top
    }

    fn plus(&self, a: &Value, b: &Value) -> Value {
        match a.lex_cmp(b) {
            Some(Ordering::Less) => b.clone(),
            _ => a.clone(),
        }
    }

    fn times(&self, a: &Value, b: &Value) -> Value {
        match a.lex_cmp(b) {
            Some(Ordering::Greater) => b.clone(),
            _ => a.clone(),
        }
    }

    fn landmarks(&self) -> Vec<Value> {
        vec![Value::Bottom, Value::Top, Value::str("")]
    }

    fn sample(&self, rng: &mut Rng) -> Value {
        match rng.gen_range(0..10) {
            0 => Value::Bottom,
            1 => Value::Top,
            _ => Value::Str(random_word(rng, 4)),
        }
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Str(_) | Value::Bottom | Value::Top)
    }

    fn decode(&self, j: &Json) -> Result<Value> {
        match j {
            Json::Null => Ok(Value::Bottom),
            Json::Bool(true) => Ok(Value::Top),
            Json::String(s) => Ok(Value::Str(s.clone())),
            _ => Err(decode_error(self.name(), j)),
        }
    }
}

/// Strings plus an absorbing bottom. ⊕ keeps the longer string (equal
/// lengths: the lexicographically greater one), ⊗ concatenates.
/// 0 = ⊥, 1 = "". ⊗ is not commutative.
#[derive(Clone, Debug, Default)]
pub struct MaxLenConcat;

impl Algebra for MaxLenConcat {
    fn name(&self) -> &str {
        "maxlen.concat"
    }

    fn zero(&self) -> Value {
        Value::Bottom
    }

    fn one(&self) -> Value {
        Value::str("")
    }

    fn plus(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Bottom, _) => b.clone(),
            (_, Value::Bottom) => a.clone(),
            (Value::Str(x), Value::Str(y)) => {
                let order = x
                    .chars()
                    .count()
                    .cmp(&y.chars().count())
                    .then_with(|| x.as_bytes().cmp(y.as_bytes()));
                if order == Ordering::Less {
                    b.clone()
                } else {
                    a.clone()
                }
            }
            _ => panic!("maxlen.concat operands must be strings or ⊥"),
        }
    }

    fn times(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Bottom, _) | (_, Value::Bottom) => Value::Bottom,
            (Value::Str(x), Value::Str(y)) => Value::Str(format!("{x}{y}")),
            _ => panic!("maxlen.concat operands must be strings or ⊥"),
        }
    }

    fn sample(&self, rng: &mut Rng) -> Value {
        if rng.gen_range(0..10) == 0 {
            Value::Bottom
        } else {
            Value::Str(random_word(rng, 3))
        }
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Str(_) | Value::Bottom)
    }

    fn decode(&self, j: &Json) -> Result<Value> {
        match j {
            Json::Null => Ok(Value::Bottom),
            Json::String(s) => Ok(Value::Str(s.clone())),
            _ => Err(decode_error(self.name(), j)),
        }
    }
}
