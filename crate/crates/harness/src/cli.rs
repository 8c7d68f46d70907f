//! The `xtime` command line.
//!
//! Exit status: 0 on success, 1 when the input fails validation, 2 when a
//! verification row fails, 64 on usage errors, 74 on I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use xtime_core::{practical_reaching_time, verify_g_conditions_with, ConditionOutcome, ControllerParams, Difference};

use crate::error::HarnessError;
use crate::report::{comparison_rows, run_scenario, RunOptions};
use crate::scenario::{find_candidate, load_scenario, CompositionSpec, IntegratorSpec, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

/// Environment variable consulted for the default output directory.
pub const OUT_DIR_ENV: &str = "XTIME_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "xtime",
    version,
    about = "Explicit-time proportional control: simulate and verify settling-time bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SimOverrides {
    /// Integration step in seconds.
    #[arg(long)]
    dt: Option<f64>,
    /// Simulated time span in seconds.
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long, value_enum)]
    integrator: Option<IntegratorSpec>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate every initial state of a scenario, check the bounds and write trajectories plus a report.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        sim: SimOverrides,
        #[arg(long, env = OUT_DIR_ENV, default_value = "xtime-out")]
        out_dir: PathBuf,
        /// Use central instead of forward differences for the Lyapunov residual.
        #[arg(long)]
        central_diff: bool,
    },
    /// Print the proportional gain ln(x_c/x_s)/T_c and the reaching-time table.
    #[command(allow_negative_numbers = true)]
    Gain {
        x_c: f64,
        x_s: f64,
        t_c: f64,
        /// Number of log-spaced initial states between x_s and x_c.
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
    /// Print the predefined-vs-explicit initial input table of a scenario.
    Compare { scenario: PathBuf },
    /// Check a shipped G candidate for admissibility on [-x_c, x_c].
    #[command(name = "check-g", allow_negative_numbers = true)]
    CheckG {
        name: String,
        x_c: f64,
        m: f64,
        #[arg(long, value_enum, default_value_t)]
        composition: CompositionSpec,
        /// Accuracy radius; only used by the practical-band composition. Defaults to x_c / 1000.
        #[arg(long)]
        x_s: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn failure_code(e: &HarnessError) -> i32 {
    if e.is_validation() {
        EXIT_INVALID
    } else {
        EXIT_IO
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            failure_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, HarnessError> {
    match command {
        Command::Run {
            scenario,
            sim,
            out_dir,
            central_diff,
        } => {
            let mut scenario = load_scenario(&scenario)?;
            apply_overrides(&mut scenario, &sim);
            scenario.setup()?;
            let options = RunOptions {
                out_dir: Some(out_dir),
                difference: if central_diff {
                    Difference::Central
                } else {
                    Difference::Forward
                },
            };
            let (report, written) = run_scenario(&scenario, &options)?;
            print_run(out, &report);
            if let Some(path) = written.last() {
                let _ = writeln!(out, "report: {}", path.display());
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Gain { x_c, x_s, t_c, points } => {
            let params = ControllerParams::with_default_exponent(x_c, x_s, t_c)?;
            let _ = writeln!(out, "gain = {:.6} 1/s", params.proportional_gain());
            let _ = writeln!(out, "{:>16} {:>12}", "x0", "T(x0)");
            let n = points.max(2);
            for i in 0..n {
                let x0 = x_s * (x_c / x_s).powf(i as f64 / (n - 1) as f64);
                let r = practical_reaching_time(&params, x0);
                let _ = writeln!(out, "{:>16.6e} {:>12.6}", x0, r.analytic_time);
            }
            Ok(EXIT_OK)
        }
        Command::Compare { scenario } => {
            let scenario = load_scenario(&scenario)?;
            let pair = scenario.comparison_or_controller_g()?;
            let rows = comparison_rows(&pair, &scenario.x0)?;
            let _ = writeln!(
                out,
                "{:>12} {:>16} {:>16} {:>14} {:>14}  ok",
                "x0", "u_predefined", "u_explicit", "advantage", "closed_form"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>12.6} {:>16.9e} {:>16.9e} {:>14.9} {:>14.9}  {}",
                    r.x0,
                    r.u_predefined_0,
                    r.u_explicit_0,
                    r.advantage,
                    r.advantage_closed_form,
                    if r.advantage_nonnegative { "yes" } else { "NO" }
                );
            }
            Ok(if rows.iter().all(|r| r.advantage_nonnegative) {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            })
        }
        Command::CheckG {
            name,
            x_c,
            m,
            composition,
            x_s,
            samples,
        } => {
            let g = find_candidate(&name)?;
            let params = ControllerParams::new(x_c, x_s.unwrap_or(x_c * 1e-3), 1.0, m)?;
            let report = verify_g_conditions_with(&g, &params, composition.into(), samples);
            let _ = writeln!(
                out,
                "{} on [-{x_c}, {x_c}], m = {m}, {:?}, {} samples",
                g.name, report.composition, report.samples
            );
            for (label, outcome) in [
                ("(a) continuity", report.continuity),
                ("(b) inverse derivative", report.inverse_derivative),
            ] {
                match outcome {
                    ConditionOutcome::Pass => {
                        let _ = writeln!(out, "{label}: pass");
                    }
                    ConditionOutcome::Fail { witness, reason } => {
                        let _ = writeln!(out, "{label}: FAIL at x = {witness} ({reason})");
                    }
                }
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

fn apply_overrides(scenario: &mut Scenario, sim: &SimOverrides) {
    if let Some(dt) = sim.dt {
        scenario.dt = dt;
    }
    if let Some(h) = sim.horizon {
        scenario.horizon = Some(h);
    }
    if let Some(i) = sim.integrator {
        scenario.integrator = i;
    }
}

fn print_run(out: &mut dyn Write, report: &crate::report::VerificationReport) {
    let s = &report.summary;
    let _ = writeln!(
        out,
        "scenario {}: {} rows, dt = {}, horizon = {}, limit T_c + 2dt = {}",
        report.scenario.name, s.rows, s.dt, s.horizon, s.settle_limit
    );
    let _ = writeln!(
        out,
        "{:>12} {:>10} {:>10} {:>6} {:>6} {:>11} {:>12}",
        "x0", "analytic", "empirical", "in_Dc", "bound", "residual", "max|u|"
    );
    for r in &report.rows {
        let empirical = r.empirical_time.map_or_else(|| "-".to_owned(), |t| format!("{t:.4}"));
        let bound = match (r.bound_asserted, r.bound_satisfied) {
            (false, _) => "n/a",
            (true, true) => "ok",
            (true, false) => "FAIL",
        };
        let residual = r
            .max_lyapunov_residual
            .map_or_else(|| "-".to_owned(), |v| format!("{v:.3e}"));
        let max_u = r.max_abs_u.map_or_else(|| "-".to_owned(), |v| format!("{v:.4e}"));
        let _ = writeln!(
            out,
            "{:>12.6} {:>10.6} {:>10} {:>6} {:>6} {:>11} {:>12}",
            r.x0, r.analytic_time, empirical, r.within_condition, bound, residual, max_u
        );
        if r.status != "ok" {
            let _ = writeln!(out, "             {}", r.status);
        }
    }
    for c in &report.comparison {
        let _ = writeln!(
            out,
            "compare x0 = {}: |u_pre| - |u_exp| = {:.9} ({})",
            c.x0,
            c.advantage,
            if c.advantage_nonnegative { "ok" } else { "NEGATIVE" }
        );
    }
    let _ = writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" });
}
