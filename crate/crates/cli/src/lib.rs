//! Command-line front end: counts, series, verification reports and scans,
//! with an on-disk cache of count tables.

pub mod args;
pub mod cache;
pub mod output;
pub mod run;

pub use run::{execute, main_with_args, RunError};
