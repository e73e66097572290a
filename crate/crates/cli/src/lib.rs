//! Command-line front end over `mahavier-core`: file formats, reports,
//! SVG rendering, and the subcommand dispatcher.

// Error values carry exact rational witnesses and parsed documents; they
// are built once per process on failure paths.
#![allow(clippy::result_large_err)]

pub mod app;
pub mod format;
pub mod report;
pub mod svg;

pub use app::run;
