use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: duplicate entries, unparsable text, bad parameters.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Well-formed input outside the operation's domain, e.g. an unsortable
    /// permutation handed to a map defined only on sortable ones.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cell set is disconnected on the width-{width} cylinder: components {components:?}")]
    Disconnected {
        width: usize,
        components: Vec<Vec<usize>>,
    },
    /// A request that exceeds a configured size cap.
    #[error("refused: {what} = {requested} exceeds the configured limit {limit}")]
    PolicyRefusal {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    /// A broken invariant. Seeing this means a bug or a false theorem.
    #[error("internal error: {0}")]
    Internal(String),
}
