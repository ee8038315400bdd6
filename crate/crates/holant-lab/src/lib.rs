//! Command-line front end: file formats, applications, verification and benchmarks.

pub mod apps;
pub mod bench;
pub mod cli;
pub mod error;
pub mod gen;
pub mod parse;
pub mod verify;

pub use error::{LabError, Result};
