//! Canonical coordinates data: eigenvalue series per sector, the idempotent norm,
//! the auxiliary generators and membership fits in the graded ring.

pub mod data;
pub mod fit;
pub mod frame;
pub mod generators;
pub mod sectorfn;

pub use data::CanonicalData;
pub use fit::{fit_in_g, FitOutcome};
pub use frame::{eigen_check, solve_ml, CanonicalFrame};
pub use generators::GeneratorBundle;
pub use sectorfn::SectorFn;
