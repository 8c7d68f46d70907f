//! Explicit-time stabilization of scalar proportional control loops.
//!
//! The crate is split along the lines of the toolkit:
//!
//! * [`params`], [`candidate`], [`settling`] and [`conditions`] hold the
//!   domain types, the shipped shaping functions `G`, the closed-form
//!   settling/reaching-time evaluators and the sampled admissibility check.
//! * [`controller`] builds the feedback laws (explicit proportional,
//!   plant-compensating, generalized explicit and generalized predefined).
//! * [`plant`], [`sim`], [`residual`] and [`sweep`] close the loop with a
//!   fixed-step integrator and verify the result against the closed forms.
//!
//! Everything here is `no_std` (with `alloc` for trajectories). File formats
//! and the command line live in the companion `xtime` crate.

#![no_std]

extern crate alloc;

pub mod candidate;
pub mod conditions;
pub mod controller;
mod error;
pub mod params;
pub mod plant;
pub mod residual;
pub mod settling;
pub mod sim;
pub mod sweep;

pub use candidate::{shipped_g_candidates, GCandidate};
pub use conditions::{verify_g_conditions, verify_g_conditions_with, ConditionOutcome, GConditionReport};
pub use controller::{Composition, Controller, ControllerKind};
pub use error::Error;
pub use params::ControllerParams;
pub use plant::Plant;
pub use residual::{lyapunov_residuals, max_normalized_residual, Difference};
pub use settling::{
    input_advantage, practical_reaching_time, predefined_settling_time, settling_time, settling_time_half_square,
    ReachReport,
};
pub use sim::{empirical_settling_time, simulate, Integrator, SettlingResult, SimConfig, Trajectory};
pub use sweep::{analytic_reach, sweep_initial_conditions, SweepEntry, SweepRun};

pub type Result<T, E = Error> = core::result::Result<T, E>;
