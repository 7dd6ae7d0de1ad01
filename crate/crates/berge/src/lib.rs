//! Long Berge cycles in r-uniform hypergraphs.
//!
//! A Berge cycle of length `c` alternates `c` distinct vertices and `c`
//! distinct edges `v_1, e_1, v_2, ..., v_c, e_c` with `{v_i, v_{i+1}}`
//! contained in `e_i` (indices mod `c`). The crate provides:
//!
//! * exact circumference and longest-path search on the incidence graph,
//! * vertex connectivity and aligned disjoint-path extraction,
//! * lollipop / disjoint cycle-path structures with their rank order and
//!   the improvement-move catalog built on it,
//! * counting bounds for spread subsets of a graph cycle, with an
//!   exhaustive small-case verifier,
//! * sharpness constructions and a randomized degree-condition harness,
//! * a command line front end over a small text/JSON instance format.
//!
//! Everything is deterministic: randomness flows from explicit seeds and
//! parallel sweeps merge in a fixed order.

pub(crate) mod bits;

pub mod connectivity;
pub mod constructions;
pub mod cycles;
pub mod graph;
pub mod harness;
pub mod hypergraph;
pub mod lemmas;
pub mod parallel;
pub mod structures;

pub mod cli;

pub use hypergraph::{Hypergraph, IncidenceGraph, Violation};

/// Crate-wide error type. Search budgets that merely truncate a result do
/// not error; they set a flag on the returned value instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge id {edge} out of range for m = {m}")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("invalid hypergraph: {0:?}")]
    InvalidHypergraph(Vec<Violation>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("no Berge cycle exists")]
    NoCycle,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
