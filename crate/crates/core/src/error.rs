use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown algebra `{0}` (known: {1})")]
    UnknownAlgebra(String, String),

    #[error("malformed algebra `{name}`: {reason} (element {element})")]
    MalformedAlgebra {
        name: String,
        element: String,
        reason: String,
    },

    #[error("key `{key}` is not in the {axis} key set")]
    KeyDomain { key: String, axis: &'static str },

    #[error("key set is not strictly ascending at `{0}`")]
    UnorderedKeys(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("algebra mismatch: `{0}` vs `{1}`")]
    AlgebraMismatch(String, String),

    #[error("sparse mode requires 0 to annihilate ⊗, which fails for `{0}`")]
    SparseModeRejected(String),

    #[error("malformed selector: {0}")]
    Selector(String),

    #[error("invalid weight for `{0}`: weights must be nonzero")]
    InvalidWeight(String),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid incidence pair: {0}")]
    Incidence(String),

    #[error("row `{row}` has {count} nonzeros in field `{field}` (hyperedge)")]
    Hyperedge {
        row: String,
        field: String,
        count: usize,
    },

    #[error("separator `{sep}` occurs in field name `{field}`")]
    AmbiguousKey { field: String, sep: char },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("cannot decode value {value} for algebra `{algebra}`")]
    Decode { algebra: String, value: String },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
