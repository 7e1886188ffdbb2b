//! Command-line front end: workspace documents and subcommand reports.

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{run_command, Outcome};
pub use error::CliError;
pub use format::{load_document, parse_document, serialize_workspace, Workspace};
