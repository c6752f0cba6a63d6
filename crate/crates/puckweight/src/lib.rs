//! File formats, pipelines and the command line for `puckweight`.
//!
//! The numerical work lives in [`puckweight_core`]; this crate reads and
//! writes the versioned text formats, resolves run configuration and renders
//! tables.

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod report;
pub mod table;

pub use error::{Error, ErrorKind, Result};
pub use puckweight_core as core;
