//! Catalogs, scenarios, checks and reports on top of `fusion-core`.

pub mod catalog;
pub mod checks;
pub mod error;
pub mod report;
pub mod scenario;

pub use catalog::{Catalog, GroupSpec};
pub use checks::{Check, CheckError, CheckOutcome, Registry, Verdict};
pub use error::AppError;
pub use report::{run_batch, run_scenario, BatchReport, CheckResult, ScenarioReport};
pub use scenario::{builtin_scenarios, load_scenarios, parse_scenarios, Scenario, Settings};
