use std::cmp::Ordering;

use rand::Rng as _;
use serde_json::Value as Json;

use super::{decode_error, Algebra, Rng};
use crate::error::Result;
use crate::value::Value;

/// The seven numeric ⊕.⊗ pairs of the music-correlation sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericKind {
    PlusTimes,
    MaxTimes,
    MinTimes,
    MaxPlus,
    MinPlus,
    MaxMin,
    MinMax,
}

impl NumericKind {
    pub const ALL: [NumericKind; 7] = [
        NumericKind::PlusTimes,
        NumericKind::MaxTimes,
        NumericKind::MinTimes,
        NumericKind::MaxPlus,
        NumericKind::MinPlus,
        NumericKind::MaxMin,
        NumericKind::MinMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NumericKind::PlusTimes => "plus.times",
            NumericKind::MaxTimes => "max.times",
            NumericKind::MinTimes => "min.times",
            NumericKind::MaxPlus => "max.plus",
            NumericKind::MinPlus => "min.plus",
            NumericKind::MaxMin => "max.min",
            NumericKind::MinMax => "min.max",
        }
    }

    fn allows_neg_inf(self) -> bool {
        matches!(self, NumericKind::MaxPlus | NumericKind::MaxMin | NumericKind::MinMax)
    }

    fn allows_pos_inf(self) -> bool {
        matches!(
            self,
            NumericKind::MinTimes | NumericKind::MinPlus | NumericKind::MaxMin | NumericKind::MinMax
        )
    }

    fn non_negative(self) -> bool {
        matches!(
            self,
            NumericKind::PlusTimes | NumericKind::MaxTimes | NumericKind::MinTimes
        )
    }
}

/// Real-valued algebras with explicit ±∞ elements where the carrier needs
/// them. Operations involving ±∞ are defined by case analysis.
#[derive(Clone, Debug)]
pub struct NumericAlgebra {
    kind: NumericKind,
}

impl NumericAlgebra {
    pub fn new(kind: NumericKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> NumericKind {
        self.kind
    }
}

fn ext_max(a: &Value, b: &Value) -> Value {
    match a.ext_cmp(b) {
        Some(Ordering::Less) => b.clone(),
        _ => a.clone(),
    }
}

fn ext_min(a: &Value, b: &Value) -> Value {
    match a.ext_cmp(b) {
        Some(Ordering::Greater) => b.clone(),
        _ => a.clone(),
    }
}

fn real(v: &Value) -> f64 {
    match v {
        Value::Real(x) => *x,
        other => panic!("expected a finite real, got {other}"),
    }
}

impl Algebra for NumericAlgebra {
    fn name(&self) -> &str {
        self.kind.name()
    }

    fn zero(&self) -> Value {
        match self.kind {
            NumericKind::PlusTimes | NumericKind::MaxTimes => Value::Real(0.0),
            NumericKind::MinTimes | NumericKind::MinPlus | NumericKind::MinMax => Value::PosInf,
            NumericKind::MaxPlus | NumericKind::MaxMin => Value::NegInf,
        }
    }

    fn one(&self) -> Value {
        match self.kind {
            NumericKind::PlusTimes | NumericKind::MaxTimes | NumericKind::MinTimes => {
                Value::Real(1.0)
            }
            NumericKind::MaxPlus | NumericKind::MinPlus => Value::Real(0.0),
            NumericKind::MaxMin => Value::PosInf,
            NumericKind::MinMax => Value::NegInf,
        }
    }

    fn plus(&self, a: &Value, b: &Value) -> Value {
        match self.kind {
            NumericKind::PlusTimes => Value::Real(real(a) + real(b)),
            NumericKind::MaxTimes | NumericKind::MaxPlus | NumericKind::MaxMin => ext_max(a, b),
            NumericKind::MinTimes | NumericKind::MinPlus | NumericKind::MinMax => ext_min(a, b),
        }
    }

    fn times(&self, a: &Value, b: &Value) -> Value {
        match self.kind {
            NumericKind::PlusTimes | NumericKind::MaxTimes => Value::Real(real(a) * real(b)),
            NumericKind::MinTimes => match (a, b) {
                (Value::PosInf, _) | (_, Value::PosInf) => Value::PosInf,
                _ => Value::Real(real(a) * real(b)),
            },
            NumericKind::MaxPlus => match (a, b) {
                (Value::NegInf, _) | (_, Value::NegInf) => Value::NegInf,
                _ => Value::Real(real(a) + real(b)),
            },
            NumericKind::MinPlus => match (a, b) {
                (Value::PosInf, _) | (_, Value::PosInf) => Value::PosInf,
                _ => Value::Real(real(a) + real(b)),
            },
            NumericKind::MaxMin => ext_min(a, b),
            NumericKind::MinMax => ext_max(a, b),
        }
    }

    fn landmarks(&self) -> Vec<Value> {
        let mut out = vec![self.zero(), self.one()];
        for special in [Value::NegInf, Value::PosInf, Value::Real(0.0), Value::Real(1.0)] {
            if self.contains(&special) && !out.contains(&special) {
                out.push(special);
            }
        }
        out
    }

    /// Quarter-integer grid values keep ⊕/⊗ chains exact in binary floating
    /// point; infinities are drawn with probability 1/8 each where allowed.
    fn sample(&self, rng: &mut Rng) -> Value {
        let roll = rng.gen_range(0..8);
        if roll == 0 && self.kind.allows_neg_inf() {
            return Value::NegInf;
        }
        if roll == 1 && self.kind.allows_pos_inf() {
            return Value::PosInf;
        }
        let k: i32 = if self.kind.non_negative() {
            rng.gen_range(0..=40)
        } else {
            rng.gen_range(-40..=40)
        };
        Value::Real(f64::from(k) / 4.0)
    }

    fn contains(&self, v: &Value) -> bool {
        match v {
            Value::Real(x) => x.is_finite() && (!self.kind.non_negative() || *x >= 0.0),
            Value::NegInf => self.kind.allows_neg_inf(),
            Value::PosInf => self.kind.allows_pos_inf(),
            _ => false,
        }
    }

    fn decode(&self, j: &Json) -> Result<Value> {
        let v = match j {
            Json::Number(n) => Value::Real(n.as_f64().ok_or_else(|| decode_error(self.name(), j))?),
            Json::String(s) if s == "-inf" => Value::NegInf,
            Json::String(s) if s == "+inf" => Value::PosInf,
            _ => return Err(decode_error(self.name(), j)),
        };
        if self.contains(&v) {
            Ok(v)
        } else {
            Err(decode_error(self.name(), j))
        }
    }

    fn existence_value(&self) -> Value {
        Value::Real(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(kind: NumericKind) -> NumericAlgebra {
        NumericAlgebra::new(kind)
    }

    #[test]
    fn quoted_products() {
        let r = |x: f64| Value::Real(x);
        assert_eq!(alg(NumericKind::PlusTimes).times(&r(2.0), &r(1.0)), r(2.0));
        assert_eq!(alg(NumericKind::MinPlus).times(&r(2.0), &r(1.0)), r(3.0));
        assert_eq!(alg(NumericKind::MaxPlus).times(&r(3.0), &r(1.0)), r(4.0));
        assert_eq!(alg(NumericKind::MaxMin).times(&r(3.0), &r(1.0)), r(1.0));
        assert_eq!(alg(NumericKind::MinMax).times(&r(2.0), &r(1.0)), r(2.0));
    }

    #[test]
    fn infinities_absorb_by_case_analysis() {
        let a = alg(NumericKind::MinPlus);
        assert_eq!(a.times(&Value::PosInf, &Value::Real(-7.0)), Value::PosInf);
        let a = alg(NumericKind::MaxPlus);
        assert_eq!(a.times(&Value::Real(5.0), &Value::NegInf), Value::NegInf);
        let a = alg(NumericKind::MinTimes);
        assert_eq!(a.times(&Value::Real(0.0), &Value::PosInf), Value::PosInf);
    }

    #[test]
    fn carriers() {
        assert!(!alg(NumericKind::PlusTimes).contains(&Value::Real(-1.0)));
        assert!(!alg(NumericKind::PlusTimes).contains(&Value::PosInf));
        assert!(alg(NumericKind::MaxPlus).contains(&Value::Real(-1.0)));
        assert!(!alg(NumericKind::MaxPlus).contains(&Value::PosInf));
        assert!(alg(NumericKind::MaxMin).contains(&Value::PosInf));
    }

    #[test]
    fn decode_rejects_foreign_values() {
        let a = alg(NumericKind::PlusTimes);
        assert!(a.decode(&Json::from("-inf")).is_err());
        assert!(a.decode(&Json::from(-2)).is_err());
        assert_eq!(a.decode(&Json::from(2)).unwrap(), Value::Real(2.0));
    }
}
