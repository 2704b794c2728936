//! The R-matrix in the normalized canonical frame.

pub mod columns;
pub mod edge;
pub mod grading;
pub mod wick;

pub use columns::{columns_from_recursion, qde_residual, r1_from_qde, RMatrix, SectorR};
pub use edge::{edge_bivector, EdgeBivector};
pub use wick::{example_r1, wick_r1, LgPotential};
