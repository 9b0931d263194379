//! Tools for deciding which finite connected simple graphs arise as
//! zero-divisor graphs of commutative semigroups.
//!
//! The zero-divisor graph of a commutative semigroup `S` with zero has the
//! nonzero zero-divisors of `S` as vertices, with distinct `x`, `y` adjacent
//! exactly when `xy = 0`. Given a graph, [`search::enumerate_realizations`]
//! performs an exhaustive, associativity-propagating search over candidate
//! multiplication tables and reports every realization up to relabeling by
//! graph automorphisms. [`screen::screen`] applies fast necessary conditions
//! that can certify non-realizability without a search, and [`verify`] pins
//! a registry of expected outcomes on named graph families.

pub mod catalog;
pub mod families;
pub mod graph;
pub mod iso;
pub mod metrics;
pub mod screen;
pub mod search;
pub mod semigroup;
pub mod verify;

use thiserror::Error;

/// Errors produced by graph and table construction, input parsing, and the
/// search entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("edge {0} -- {1} appears more than once")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("graph is disconnected: no path from `{0}` to `{1}`")]
    Disconnected(String, String),
    #[error("graph has {got} vertices; this operation supports at most {limit}")]
    TooLarge { got: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
