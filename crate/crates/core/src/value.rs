//! Dynamically typed algebra elements.
//!
//! Every built-in algebra stores its carrier in a [`Value`]. The variant set
//! is closed so that arrays, graphs and JSON documents can hold values of any
//! registered algebra without generics leaking through the whole API.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// An element of some value algebra.
///
/// `NegInf` and `PosInf` are distinguished elements, never IEEE infinities
/// held in `Real`.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Real(f64),
    NegInf,
    PosInf,
    Int(i64),
    Str(String),
    Set(BTreeSet<String>),
    /// Absorbing bottom of the string algebras.
    Bottom,
    /// Top of the lexicographic string algebra.
    Top,
    /// Index into a finite operation table.
    Elem(usize),
}

impl Value {
    pub fn str(s: impl Into<String>) -> Self {
        Value::Str(s.into())
    }

    pub fn set<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Value::Set(items.into_iter().map(Into::into).collect())
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(x) => Some(*x),
            _ => None,
        }
    }

    /// Order on the extended reals: `NegInf < Real(_) < PosInf`.
    /// Returns `None` for non-numeric operands.
    pub fn ext_cmp(&self, other: &Value) -> Option<Ordering> {
        use Value::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, Real(_) | PosInf) | (Real(_), PosInf) => Some(Ordering::Less),
            (PosInf, Real(_) | NegInf) | (Real(_), NegInf) => Some(Ordering::Greater),
            (Real(a), Real(b)) => a.partial_cmp(b),
            _ => None,
        }
    }

    /// Order on strings with `Bottom` below and `Top` above every string.
    pub fn lex_cmp(&self, other: &Value) -> Option<Ordering> {
        use Value::*;
        match (self, other) {
            (Bottom, Bottom) | (Top, Top) => Some(Ordering::Equal),
            (Bottom, _) => Some(Ordering::Less),
            (_, Bottom) => Some(Ordering::Greater),
            (Top, _) => Some(Ordering::Greater),
            (_, Top) => Some(Ordering::Less),
            (Str(a), Str(b)) => Some(a.as_bytes().cmp(b.as_bytes())),
            _ => None,
        }
    }
}

/// Formats a real without a trailing `.0` when it is integral.
pub(crate) fn format_real(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(x) => f.write_str(&format_real(*x)),
            Value::NegInf => f.write_str("-inf"),
            Value::PosInf => f.write_str("+inf"),
            Value::Int(i) => write!(f, "{i}"),
            Value::Str(s) => write!(f, "{s:?}"),
            Value::Set(s) => {
                f.write_str("{")?;
                for (i, item) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(item)?;
                }
                f.write_str("}")
            }
            Value::Bottom => f.write_str("⊥"),
            Value::Top => f.write_str("⊤"),
            Value::Elem(i) => write!(f, "#{i}"),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}
