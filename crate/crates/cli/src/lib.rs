//! Command-line front end: polynomial parsing, subcommands and the JSON
//! envelope they share.

pub mod commands;
pub mod config;
pub mod parse;
pub mod report;

pub use config::{OutputFormat, RunConfig};
pub use parse::{parse_multivariate, parse_polynomial, ParseError, PolyExpression};
pub use report::{Envelope, Outcome};
