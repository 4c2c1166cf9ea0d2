use thiserror::Error;

/// Errors raised across the crate.
///
/// Row and column numbers carried by the variants are 0-based; the
/// `Display` output converts them to 1-based numbering.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed entry `{token}`")]
    MalformedEntry { line: usize, token: String },

    #[error("line {line}: expected {expected} entries, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry at row {}, column {} belongs to a family of column {}", .row + 1, .column + 1, .found_column + 1)]
    FamilyLeak {
        row: usize,
        column: usize,
        found_column: usize,
    },

    #[error("column {}: family id {family} has no name", .column + 1)]
    UnknownFamily { column: usize, family: u32 },

    #[error("rows {} and {} have no orthogonal column", .first + 1, .second + 1)]
    NotOrthogonal { first: usize, second: usize },

    #[error("{what} index {index} out of range (size {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("row {} paired with itself", .0 + 1)]
    SameRow(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("search space of {required} tuples exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("expected a {expected_rows}x{expected_cols} matrix, found {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),

    #[error("no known-size table for {0} qubits")]
    UnknownN(usize),

    #[error("graph with {vertices} vertices exceeds the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("catalog entry `{name}`: recorded fact `{fact}` does not hold")]
    FactMismatch { name: String, fact: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
