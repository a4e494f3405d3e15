use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::{
    MaxLenConcat, MaxLexMinLex, NumericAlgebra, NumericKind, UnionIntersect, ValueAlgebra,
};
use crate::error::{Error, Result};

/// Names accepted by `--semiring`, in presentation order.
pub const BUILTIN_NAMES: [&str; 10] = [
    "plus.times",
    "max.times",
    "min.times",
    "max.plus",
    "min.plus",
    "max.min",
    "min.max",
    "union.intersect",
    "maxlex.minlex",
    "maxlen.concat",
];

type Factory = Box<dyn Fn() -> ValueAlgebra + Send + Sync>;

/// Name → constructor table for algebras.
pub struct AlgebraRegistry {
    factories: BTreeMap<String, Factory>,
}

impl AlgebraRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// The ten built-in algebras.
    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        for kind in NumericKind::ALL {
            reg.register(kind.name(), move || ValueAlgebra::new(NumericAlgebra::new(kind)));
        }
        reg.register("union.intersect", || ValueAlgebra::new(UnionIntersect::default()));
        reg.register("maxlex.minlex", || ValueAlgebra::new(MaxLexMinLex));
        reg.register("maxlen.concat", || ValueAlgebra::new(MaxLenConcat));
        reg
    }

    /// Process-wide registry of built-ins.
    pub fn global() -> &'static AlgebraRegistry {
        static GLOBAL: OnceLock<AlgebraRegistry> = OnceLock::new();
        GLOBAL.get_or_init(Self::with_builtins)
    }

    pub fn register<F>(&mut self, name: impl Into<String>, factory: F)
    where
        F: Fn() -> ValueAlgebra + Send + Sync + 'static,
    {
        self.factories.insert(name.into(), Box::new(factory));
    }

    pub fn get(&self, name: &str) -> Result<ValueAlgebra> {
        match self.factories.get(name) {
            Some(f) => Ok(f()),
            None => Err(Error::UnknownAlgebra(
                name.to_string(),
                self.names().collect::<Vec<_>>().join(", "),
            )),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }
}

/// Looks up one of [`BUILTIN_NAMES`].
pub fn builtin_algebra(name: &str) -> Result<ValueAlgebra> {
    AlgebraRegistry::global().get(name)
}
