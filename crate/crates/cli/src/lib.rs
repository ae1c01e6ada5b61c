//! Verification suites, report formats and file-level operator tooling for
//! `hilbert-core`. The `hilbert-ops` binary is a thin layer over this crate.

pub mod apply;
pub mod config;
pub mod error;
pub mod report;
pub mod suite;

pub use config::SuiteConfig;
pub use error::CliError;
pub use report::{CheckRecord, SuiteReport};
pub use suite::{run_verify, Target};
