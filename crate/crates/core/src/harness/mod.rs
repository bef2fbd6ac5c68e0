//! Batch scenario runner, commutativity checks, and report output.

pub mod config;
pub mod report;
pub mod suite;
pub mod verify;

pub use config::{ScenarioConfig, ScenarioKind, SuiteConfig, Topology};
pub use report::{emit_report, GrowthEntry, Report, ReportFormat, ReportRow, CSV_HEADER, INTERFACE_STEPS};
pub use suite::{run_suite, run_suite_with_workers, worker_count, WORKERS_ENV};
pub use verify::{
    default_verifications, verify_discrete, verify_simulation, DiscreteInstance, SimulationFault, Verdict,
};
