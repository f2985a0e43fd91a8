//! The `anorm` command line: job execution, report output and the bundled
//! self-test corpus.

pub mod app;
pub mod runner;
pub mod selftest;
