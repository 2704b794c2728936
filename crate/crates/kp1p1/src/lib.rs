//! Exact rational computation of torus-equivariant genus-0 data, the R-matrix and
//! higher-genus graph sums for local P1 x P1.
//!
//! Stages run in dependency order: [`genus0`] builds the I-function and connection
//! matrices, [`canonical`] the eigenvalue frame and generator series, [`rmatrix`] the
//! R-matrix and edge propagator, [`graphsum`] the stable-graph sums, and [`finitegen`]
//! the genus-2 fit and anomaly check. [`report`] turns each stage into a JSON artifact.

pub mod error;
pub mod exactseries;
pub mod frobenius;
pub mod genus0;
pub mod canonical;
pub mod rmatrix;
pub mod graphsum;
pub mod finitegen;
pub mod report;

pub use error::{Error, Result};
