//! Command-line front end for `trigen-core`: JSON and CSV formats, the `trigen` subcommands
//! and the acceptance campaigns.

pub mod acceptance;
pub mod cli;
pub mod format;
pub mod parallel;

/// Package version with the `git describe` of the build.
pub const VERSION: &str = env!("TRIGEN_VERSION");
