//! Polynomial expressions, the job file language and structured reports.

mod expr;
mod job;
mod lexer;
pub mod report;

pub use expr::{parse_poly, print_canonical};
pub use job::{parse_job, parse_job_with, GeneratorList, GrowthSpec, JobFile, JobOptions, Task};
pub use report::{emit_report, OutputMode, Payload, Report, Status};
