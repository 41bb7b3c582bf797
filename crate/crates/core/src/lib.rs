//! Product-coproduct prographs and their combinatorial relatives.
//!
//! This crate models the three families of objects counted by the
//! three-dimensional Catalan numbers `2(3n)!/(n!(n+1)!(n+2)!)`:
//!
//! * 3-row rectangular standard Young tableaux ([`tableaux`]),
//! * PC prographs, planar assemblies of `n` binary products and `n`
//!   binary coproducts ([`prograph`]),
//! * bipolar-oriented triangulations of the sphere ([`duality`]),
//!
//! together with the bijections between them ([`bijection`]), the four
//! oriented rotation rules and the dual edge flips ([`rewriting`],
//! [`duality`]), the posets and lattices they generate ([`order`]) and
//! the refined counting statistics ([`stats`]).
//!
//! Everything here is desk-scale: all structural claims are verified by
//! exhaustive enumeration at small sizes, see the `acceptance` test
//! target.

pub mod bijection;
pub mod duality;
pub mod order;
pub mod prograph;
pub mod rewriting;
pub mod stats;
pub mod tableaux;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A tableau failed one of the standardness invariants.
    InvalidTableau(String),
    /// A prograph failed validation (the report explains which invariant).
    InvalidPrograph(String),
    /// A bijection replay got stuck; the message names the offending entry.
    Bijection(String),
    /// A rotation was requested on an edge whose type does not admit it.
    Rewrite(String),
    /// A triangulation operation failed; the message names the reason.
    Duality(String),
    /// An edge index or rule name referred to nothing.
    UnknownEdge(String),
    /// Reachability turned out to be cyclic, so no poset exists.
    NotAPoset(String),
    /// Tree sizes disagree where equal sizes are required.
    SizeMismatch(String),
    /// A closure computation ran out of its step budget. Carries the
    /// canonical codes of the normal forms found so far.
    BudgetExhausted { partial: Vec<String> },
    /// The dg statistic is undefined on the empty tree.
    EmptyTree,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTableau(m) => write!(f, "invalid tableau: {m}"),
            Error::InvalidPrograph(m) => write!(f, "invalid prograph: {m}"),
            Error::Bijection(m) => write!(f, "bijection failure: {m}"),
            Error::Rewrite(m) => write!(f, "rotation not applicable: {m}"),
            Error::Duality(m) => write!(f, "triangulation error: {m}"),
            Error::UnknownEdge(m) => write!(f, "unknown edge: {m}"),
            Error::NotAPoset(m) => write!(f, "not a poset: {m}"),
            Error::SizeMismatch(m) => write!(f, "size mismatch: {m}"),
            Error::BudgetExhausted { partial } => {
                write!(f, "step budget exhausted ({} normal forms found)", partial.len())
            }
            Error::EmptyTree => write!(f, "statistic undefined on the empty tree"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
