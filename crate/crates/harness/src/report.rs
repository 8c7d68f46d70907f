//! Scenario execution and the verification report.

use std::path::{Path, PathBuf};

use serde::Serialize;
use xtime_core::{
    input_advantage, lyapunov_residuals, max_normalized_residual, sweep_initial_conditions, Controller, Difference,
};

use crate::error::{HarnessError, Result};
use crate::export::write_trajectory;
use crate::scenario::Scenario;

/// Slack on the nonnegativity of the input advantage.
pub const ADVANTAGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Where trajectories and the report go; nothing is written when `None`.
    pub out_dir: Option<PathBuf>,
    pub difference: Difference,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub x0: f64,
    /// `ok`, or the simulation error for this start.
    pub status: String,
    pub analytic_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_time: Option<f64>,
    pub within_condition: bool,
    /// Only rows inside the condition domain are held to the bound.
    pub bound_asserted: bool,
    pub bound_satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_lyapunov_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_u: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory_file: Option<String>,
}

impl Row {
    pub fn failed(&self) -> bool {
        self.bound_asserted && !self.bound_satisfied
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub x0: f64,
    pub u_predefined_0: f64,
    pub u_explicit_0: f64,
    /// `|u_predefined_0| - |u_explicit_0|`, evaluated from the two laws.
    pub advantage: f64,
    /// The same gap from its closed form.
    pub advantage_closed_form: f64,
    pub advantage_nonnegative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub rows: usize,
    pub asserted_rows: usize,
    pub failed_rows: usize,
    pub negative_advantages: usize,
    pub dt: f64,
    pub horizon: f64,
    /// `T_c + 2 dt`.
    pub settle_limit: f64,
    pub residual_scheme: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub scenario: Scenario,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comparison: Vec<ComparisonRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report is always representable in TOML")
    }
}

pub fn comparison_rows(pair: &(Controller, Controller), x0s: &[f64]) -> Result<Vec<ComparisonRow>> {
    let (predefined, explicit) = pair;
    let g = explicit.g().expect("comparison controllers carry G");
    x0s.iter()
        .map(|&x0| {
            let u_predefined_0 = predefined.u(x0);
            let u_explicit_0 = explicit.u(x0);
            let advantage = u_predefined_0.abs() - u_explicit_0.abs();
            Ok(ComparisonRow {
                x0,
                u_predefined_0,
                u_explicit_0,
                advantage,
                advantage_closed_form: input_advantage(g, explicit.params(), x0)?,
                advantage_nonnegative: advantage >= -ADVANTAGE_SLACK,
            })
        })
        .collect()
}

fn trajectory_name(index: usize) -> String {
    format!("trajectory_{index:03}.csv")
}

/// Runs the sweep, evaluates every row and, when an output directory is
/// set, writes `<out>/<name>/trajectory_NNN.csv` per start plus
/// `<out>/<name>/report.toml`. Per-row simulation failures become row
/// statuses; only I/O aborts the run.
pub fn run_scenario(scenario: &Scenario, options: &RunOptions) -> Result<(VerificationReport, Vec<PathBuf>)> {
    let setup = scenario.setup()?;
    let params = *setup.controller.params();
    let entries = sweep_initial_conditions(setup.plant, &setup.controller, &scenario.x0, setup.config)?;
    let dt = setup.config.dt;
    let settle_limit = params.t_c() + 2.0 * dt;

    let dir = match &options.out_dir {
        Some(out) => {
            let dir = out.join(&scenario.name);
            std::fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
            Some(dir)
        }
        None => None,
    };
    let mut written = Vec::new();

    let mut rows = Vec::with_capacity(entries.len());
    for (index, entry) in entries.iter().enumerate() {
        let within = entry.reach.within_condition;
        let mut row = Row {
            x0: entry.x0,
            status: "ok".into(),
            analytic_time: entry.reach.analytic_time,
            empirical_time: None,
            within_condition: within,
            bound_asserted: within,
            bound_satisfied: false,
            max_lyapunov_residual: None,
            max_abs_u: None,
            trajectory_file: None,
        };
        match &entry.run {
            Ok(run) => {
                row.empirical_time = run.settling.time;
                row.bound_satisfied = run.settling.time.is_some_and(|t| t <= settle_limit);
                row.max_abs_u = Some(run.trajectory.max_abs_u());
                row.max_lyapunov_residual = lyapunov_residuals(&run.trajectory, &params, options.difference)
                    .ok()
                    .map(|r| max_normalized_residual(&r, &run.trajectory));
                if let Some(dir) = &dir {
                    let name = trajectory_name(index);
                    let path = dir.join(&name);
                    write_trajectory(&path, &run.trajectory)?;
                    row.trajectory_file = Some(name);
                    written.push(path);
                }
            }
            Err(e) => row.status = e.to_string(),
        }
        rows.push(row);
    }

    let comparison = match &setup.comparison {
        Some(pair) => comparison_rows(pair, &scenario.x0)?,
        None => Vec::new(),
    };

    let failed_rows = rows.iter().filter(|r| r.failed()).count();
    let negative_advantages = comparison.iter().filter(|c| !c.advantage_nonnegative).count();
    let report = VerificationReport {
        summary: Summary {
            passed: failed_rows == 0 && negative_advantages == 0,
            rows: rows.len(),
            asserted_rows: rows.iter().filter(|r| r.bound_asserted).count(),
            failed_rows,
            negative_advantages,
            dt,
            horizon: setup.config.horizon,
            settle_limit,
            residual_scheme: match options.difference {
                Difference::Forward => "forward",
                Difference::Central => "central",
            },
        },
        scenario: scenario.clone(),
        rows,
        comparison,
    };

    if let Some(dir) = &dir {
        let path = dir.join("report.toml");
        write_report(&path, &report)?;
        written.push(path);
    }
    Ok((report, written))
}

pub fn write_report(path: &Path, report: &VerificationReport) -> Result<()> {
    std::fs::write(path, report.to_toml()).map_err(|e| HarnessError::io(path, e))
}
