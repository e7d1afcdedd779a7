use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("header must declare at least one letter and one state (got d={d}, n={n})")]
    NonPositiveHeader { d: i64, n: i64 },

    #[error("expected {expected} cell tokens, found {found}")]
    TokenCountMismatch { expected: usize, found: usize },

    #[error("malformed token {token:?} at position {position}")]
    MalformedToken { position: usize, token: String },

    #[error("cell (state {state}, letter {letter}) targets {target}, outside [0, {n})")]
    TargetOutOfRange {
        state: usize,
        letter: usize,
        target: usize,
        n: usize,
    },

    #[error("letter {letter} is outside the alphabet of size {d}")]
    InvalidLetter { letter: usize, d: usize },

    #[error("vertex {vertex} has outdegree {found}, expected uniform outdegree {expected}")]
    NonUniformOutdegree {
        vertex: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("automaton is not complete")]
    NotComplete,

    #[error("automaton is not synchronizing")]
    NotSynchronizing,

    #[error("states {p} and {q} cannot be merged by any word")]
    NotMergeable { p: usize, q: usize },

    #[error("limit of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("graph is not an AGW graph (strongly connected: {strongly_connected}, uniform outdegree: {uniform}, cycle gcd: {gcd})")]
    NotAgw {
        strongly_connected: bool,
        uniform: bool,
        gcd: usize,
    },

    #[error("relation is not a congruence: class of state {state} splits under letter {letter}")]
    NotCongruence { state: usize, letter: usize },

    #[error("no coloring with a nontrivial stable pair was found")]
    SearchExhausted,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
