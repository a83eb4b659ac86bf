//! Command-line front end: surface syntax, instance file formats, reports
//! and subcommand dispatch.

pub mod commands;
pub mod formats;
pub mod report;
pub mod surface;

pub use commands::{run, Cli, Command, Format, Options};
pub use report::{Check, Report, Status, Verdict};
pub use surface::{parse_surface, print_surface, ParseError};
