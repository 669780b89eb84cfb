//! Operator means on Hermitian positive-definite matrices, reverse constants
//! for Callebaut-type inequalities, and a harness that checks those
//! inequalities in the Loewner order on seeded random instances.

pub mod error;
pub mod instances;
pub mod matrix;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
