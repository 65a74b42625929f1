//! Batch front end: job configs, command verbs, reports and the acceptance suite.

pub mod config;
pub mod report;
pub mod run;
pub mod suite;

pub use config::{parse_config, DatumSource, JobConfig};
pub use report::{emit_report, CheckRecord, Format, Report};
pub use run::{run, selftest, Command};
