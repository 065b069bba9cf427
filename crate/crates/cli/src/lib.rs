//! Library half of the `hodgez` binary: profile library, class expression
//! parsing, and command implementations. Kept separate from `main` so the
//! integration tests can exercise everything in-process.

pub mod commands;
pub mod error;
pub mod expr;
pub mod library;

pub use commands::{CommandOutput, OutputFormat};
pub use error::CliError;
pub use expr::parse_class_expr;
pub use library::ProfileLibrary;
