//! Scenario files, reports, trajectory export and the `xtime` command line
//! on top of [`xtime_core`].

pub mod cli;
pub mod error;
pub mod export;
pub mod report;
pub mod scenario;

pub use error::{HarnessError, Result};
pub use report::{run_scenario, RunOptions, VerificationReport};
pub use scenario::{load_scenario, Scenario};
