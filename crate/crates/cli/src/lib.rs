//! Batch front end for `gnorm-core`: problem files in, JSON reports out.

pub mod args;
pub mod error;
pub mod gallery;
pub mod problem;
pub mod report;
pub mod run;

pub use args::{Cli, Cmd, MethodArg};
pub use error::CliError;
pub use problem::{parse_problem, parse_problem_file, Problem, ProblemFile};
pub use report::Report;
pub use run::{execute, Outcome};
