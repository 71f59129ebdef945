//! Experiment harness for `fsplit-core`: containment checks between symbolic
//! powers, ordinary powers and test ideals, with machine-readable reports.

pub mod bounds;
pub mod config;
pub mod report;
pub mod suite;
pub mod verify;

pub use config::{load_config, parse_config, ExperimentSpec};
pub use report::{SuiteReport, Verdict};
pub use suite::run_suite;
