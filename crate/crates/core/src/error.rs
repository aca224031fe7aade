use thiserror::Error;

/// Failures raised by constructions and searches.
///
/// Axiom violations are not errors: they come back inside an
/// [`AxiomReport`](crate::report::AxiomReport). Errors are reserved for inputs
/// that cannot be evaluated at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed tables: wrong dimensions, out-of-range indices, empty sum sets.
    #[error("structural error: {0}")]
    Structure(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A congruence closure met `T x A0`.
    #[error("no pair-congruence contains the seeds: closure reaches ({0}, {1})")]
    Inadmissible(String, String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("{what}: size {size} exceeds limit {limit} (estimate {estimate})")]
    TooLarge {
        what: String,
        size: usize,
        limit: usize,
        estimate: String,
    },

    #[error("search bound exhausted: {what} (lower bound {lower_bound})")]
    BoundExhausted { what: String, lower_bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
