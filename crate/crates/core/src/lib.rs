pub mod algebra;
pub mod bang;
pub mod cct;
pub mod cli;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod hochschild;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod rmatrix;
pub mod search;
pub mod workspace;

pub use error::{Error, Result};
