//! Genus-zero data: I-function, Picard-Fuchs checks, S-matrix columns and connection matrices.

pub mod ifunction;

pub use ifunction::{i_function, picard_fuchs_residual, IFamily, ZLaurent};
pub mod scolumns;

pub use scolumns::{s_columns, ConnectionMatrices, SColumns};
pub mod relations;

pub use relations::{relation_suite, run_suite, NamedEntries, RelationReport};
