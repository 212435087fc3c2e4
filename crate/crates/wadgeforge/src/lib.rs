//! Command line, file formats and configuration on top of `wadgeforge-core`.

pub mod cli;
pub mod config;
pub mod formats;

pub use wadgeforge_core as core;
