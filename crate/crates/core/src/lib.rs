//! Witness sets of maximum degree one in Hamming graphs.
//!
//! For `k >= 3` the set `W = Y(1,1) ∪ Y(2,2) ∪ ... ∪ Y(2,k-1)` inside `H(n,k)` has
//! `k^(n-1) + 1` vertices (one more than the independence number) and its induced
//! subgraph has maximum degree exactly one. This crate builds `W`, audits it by
//! streaming adjacency checks, and cross-checks every supporting fact against
//! brute-force oracles on small graphs.
//!
//! Modules:
//! - [`hamming`]: vertices, adjacency, rank/unrank, vertex text form.
//! - [`construction`]: the sets `X(s)`, `Y(s,t)`, `Z(s,t,c)`, `W`, their enumerators and size formulas.
//! - [`verifier`]: induced-degree audits, the matching certificate and the lemma checks.
//! - [`oracle`]: dense materialization, exact independence number and exact `f(G)`.
//! - [`report`], [`edges`]: the key/value report document and the DIMACS-like edge format.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod construction;
pub mod edges;
mod error;
pub mod hamming;
pub mod oracle;
mod parallel;
pub mod report;
pub mod verifier;

pub use construction::SetSpec;
pub use error::{Counterexample, Error, Result};
pub use hamming::{GraphParams, Vertex, VertexRank};
