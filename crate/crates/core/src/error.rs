use thiserror::Error;

pub type Result<T> = std::result::Result<T, GyroError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GyroError {
    #[error("element {index} is out of range for order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("duplicate element {0} in set")]
    DuplicateElement(usize),

    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    RaggedTable { row: usize, len: usize, order: usize },

    #[error("table is empty")]
    EmptyTable,

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),

    #[error("gyrogroup axioms failed: {0}")]
    AxiomsFailed(String),

    #[error("no two-sided identity element")]
    MissingIdentity,

    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("empty sequence")]
    EmptySequence,

    #[error("empty set")]
    EmptySet,

    #[error("the identity element {0} may not be a generator")]
    IdentityInGenerators(usize),

    #[error("{0:?} is not a subgyrogroup")]
    NotSubgyrogroup(Vec<usize>),

    #[error("{0:?} is not an L-subgyrogroup")]
    NotLSubgyrogroup(Vec<usize>),

    #[error("order {order} exceeds the enumeration bound {bound}; raise the bound to proceed")]
    OrderTooLarge { order: usize, bound: usize },

    #[error("search would examine {count} sets, above the bound of {bound}")]
    SearchTooLarge { count: u128, bound: u128 },

    #[error("left cosets failed to partition the gyrogroup: {0}")]
    BrokenPartition(String),

    #[error("graph has {graph} vertices but partition covers {partition}")]
    VertexCountMismatch { graph: usize, partition: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown builtin `{0}` (available: g8, g15, g16)")]
    UnknownBuiltin(String),

    #[error("{0}")]
    Io(String),
}

impl GyroError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        GyroError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
