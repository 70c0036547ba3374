//! Command-line frontend for `hawking-core`: JSON configuration, parallel
//! sweeps and the CSV/JSON sweep file formats.

mod app;
pub mod config;
pub mod output;
pub mod parallel;

pub use app::{run, CliConfig, Job};
