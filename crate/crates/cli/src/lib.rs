//! Command-line front end: algebra and class files, a workspace of named
//! objects with a spectrum cache, and the subcommands.

pub mod commands;
pub mod error;
pub mod format;
pub mod suites;
pub mod workspace;

pub use commands::{execute, Cli, Command, Outcome};
pub use error::{CliError, Result};
pub use workspace::{Class, Workspace};
