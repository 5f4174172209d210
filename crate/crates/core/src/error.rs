use thiserror::Error;

/// Errors raised while building constraint systems or applying goal
/// constructors and relations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation `{0}` is registered more than once")]
    DuplicateRelation(String),
    #[error("relation `==` is built in and cannot be registered")]
    ReservedRelation,
    #[error("relation `{0}` must have arity of at least 1")]
    ZeroArity(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("`{relation}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
}
