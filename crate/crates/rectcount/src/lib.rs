//! Command-line front end, sequence cache and verification suites on top of
//! `rectcount-core`.

pub mod cache;
pub mod cli;
pub mod format;
pub mod parallel;
pub mod verify;

pub use cli::{run, run_with};
pub use rectcount_core as core;
