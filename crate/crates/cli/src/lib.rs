//! Command-line front end: query parsing, execution, rendering and the
//! persistent A-set cache.

pub mod cache;
pub mod output;
pub mod query;
pub mod run;

pub use query::{Command, Format, Query};
pub use run::{run, run_with, Outcome, Settings};
