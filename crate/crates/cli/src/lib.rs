//! Command-line surface for `ore-core`: a text parser for scalars, polynomials
//! and skew polynomials, request handling, and text/JSON reports.

pub mod args;
pub mod parse;
pub mod request;
pub mod run;

pub use args::Cli;
pub use request::{Command, Format, Request};
pub use run::{run, CliError, Report, Response};
