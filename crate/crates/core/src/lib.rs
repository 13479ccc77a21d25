//! Johnson graphs and their automorphism groups.
//!
//! The crate builds Johnson, Kneser, complete, bipartite and line graphs,
//! computes automorphism groups exactly with a refinement search backed by
//! a Schreier-Sims stabilizer chain, and checks the structural facts behind
//! `Aut(J(n, m))`: the induced action of `Sym(n)`, the complementation map
//! on `J(2m, m)`, the Whitney lift to line graphs, the neighborhood
//! isomorphism with `L(K_{m, n-m})`, and rigidity of vertex neighborhoods.

pub mod combinatorics;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod refine;
pub mod schema;
pub mod search;
pub mod theory;

pub use error::{Error, Result};
