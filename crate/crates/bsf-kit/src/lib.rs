//! Job-file language, runner and golden corpus for the `bsf-kit` command-line tool.

pub mod corpus;
pub mod job;
pub mod render;
pub mod run;
