//! Batch runs over a list of initial states.

use alloc::vec::Vec;

use crate::controller::{Controller, ControllerKind};
use crate::plant::Plant;
use crate::settling::{practical_reaching_time, predefined_settling_time, settling_time, ReachReport};
use crate::sim::{empirical_settling_time, simulate, SettlingResult, SimConfig, Trajectory};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRun {
    pub trajectory: Trajectory,
    pub settling: SettlingResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub x0: f64,
    /// Simulation outcome; a divergence is kept here instead of aborting the sweep.
    pub run: Result<SweepRun>,
    pub reach: ReachReport,
}

/// Closed-form time for the loop formed by `controller` on its intended plant.
///
/// The proportional kinds report the time to enter the accuracy band; the
/// generalized kinds the time to reach `W_ref` under their composition.
pub fn analytic_reach(controller: &Controller, x0: f64) -> Result<ReachReport> {
    let params = controller.params();
    match (controller.kind(), controller.g()) {
        (ControllerKind::GeneralizedExplicit, Some(g)) => settling_time(g, params, controller.composition(), x0),
        (ControllerKind::GeneralizedPredefined, Some(g)) => {
            predefined_settling_time(g, params, controller.composition(), x0)
        }
        _ => Ok(practical_reaching_time(params, x0)),
    }
}

/// Simulates each initial state and pairs the empirical settling time with
/// the closed-form one. Entries are independent and come back in input order.
pub fn sweep_initial_conditions(
    plant: Plant,
    controller: &Controller,
    x0_list: &[f64],
    config: SimConfig,
) -> Result<Vec<SweepEntry>> {
    let x_s = controller.params().x_s();
    x0_list
        .iter()
        .map(|&x0| {
            let reach = analytic_reach(controller, x0)?;
            let run = simulate(plant, controller, x0, config).map(|trajectory| SweepRun {
                settling: empirical_settling_time(&trajectory, x_s),
                trajectory,
            });
            Ok(SweepEntry { x0, run, reach })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ControllerParams;
    use crate::Error;

    #[test]
    fn reference_sweep() {
        let p = ControllerParams::with_default_exponent(100.0, 0.1, 1.0).unwrap();
        let c = Controller::plant_compensating(p);
        let dt = 1e-3;
        let xs = [100.0, -100.0, 50.0, -50.0, 10.0, -10.0, 0.0];
        let entries = sweep_initial_conditions(Plant::UnstableLinear, &c, &xs, SimConfig::new(dt, 2.0)).unwrap();
        assert_eq!(entries.len(), xs.len());
        for e in &entries {
            let run = e.run.as_ref().unwrap();
            let t = run.settling.time.unwrap();
            assert!(run.settling.entered && t <= 1.0 + 2.0 * dt);
            assert!((t - e.reach.analytic_time).abs() <= 2.0 * dt, "x0={} t={t}", e.x0);
        }
        assert_eq!(entries[6].run.as_ref().unwrap().settling.time, Some(0.0));
    }

    #[test]
    fn divergent_entry_does_not_abort() {
        let p = ControllerParams::with_default_exponent(100.0, 0.1, 1.0).unwrap();
        let c = Controller::explicit_proportional(p);
        let entries =
            sweep_initial_conditions(Plant::UnstableLinear, &c, &[1.0, 1e308], SimConfig::new(0.5, 400.0)).unwrap();
        assert!(entries[0].run.is_ok());
        assert!(matches!(entries[1].run, Err(Error::Divergence { .. })));
    }
}
