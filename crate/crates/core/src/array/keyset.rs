use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Finite, strictly ascending (byte-lexicographic) sequence of string keys.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KeySet(Arc<[String]>);

impl KeySet {
    /// Requires the keys to already be strictly ascending.
    pub fn new<I, S>(keys: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let keys: Vec<String> = keys.into_iter().map(Into::into).collect();
        if let Some(w) = keys.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedKeys(w[1].clone()));
        }
        Ok(Self(keys.into()))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted<I, S>(keys: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut keys: Vec<String> = keys.into_iter().map(Into::into).collect();
        keys.sort();
        keys.dedup();
        Self(keys.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self, key: &str) -> Option<usize> {
        self.0.binary_search_by(|k| k.as_str().cmp(key)).ok()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.rank(key).is_some()
    }

    pub fn key(&self, rank: usize) -> &str {
        &self.0[rank]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    /// Ranks of the keys in the closed interval `[lo, hi]`.
    pub fn range(&self, lo: &str, hi: &str) -> std::ops::Range<usize> {
        let start = self.0.partition_point(|k| k.as_str() < lo);
        let end = self.0.partition_point(|k| k.as_str() <= hi);
        start..end.max(start)
    }
}

impl fmt::Debug for KeySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}
