//! Exact chain-level computations around the Dennis trace.

pub mod algebra;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod suites;
pub mod trace;
pub mod waldhausen;

pub use error::{Error, Result};
