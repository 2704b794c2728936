//! Stable graphs, psi integrals and the graph sum for higher genus potentials.

pub mod assemble;
pub mod graphs;
pub mod psi;

pub use assemble::{h1_plus_h2, GraphContribution, GraphSum};
pub use graphs::{stable_graphs, StableGraph};
pub use psi::PsiCache;
