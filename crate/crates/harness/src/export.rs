//! Trajectory files: comma-separated, header `t,x,u,V`, one row per grid
//! point, 17 significant digits so every value reads back bit-exact.

use std::fmt::Write as _;
use std::path::Path;

use xtime_core::Trajectory;

use crate::error::{HarnessError, Result};

pub const HEADER: &str = "t,x,u,V";

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(80 * (traj.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for i in 0..traj.len() {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            traj.t[i], traj.x[i], traj.u[i], traj.v[i]
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn write_trajectory(path: &Path, traj: &Trajectory) -> Result<()> {
    std::fs::write(path, trajectory_csv(traj)).map_err(|e| HarnessError::io(path, e))
}

/// Parses a trajectory file back into columns `[t, x, u, V]`.
pub fn read_columns(text: &str) -> Option<[Vec<f64>; 4]> {
    let mut lines = text.lines();
    if lines.next()? != HEADER {
        return None;
    }
    let mut cols: [Vec<f64>; 4] = Default::default();
    for line in lines {
        let mut fields = line.split(',');
        for col in cols.iter_mut() {
            col.push(fields.next()?.parse().ok()?);
        }
        if fields.next().is_some() {
            return None;
        }
    }
    Some(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use xtime_core::{simulate, Controller, ControllerParams, Plant, SimConfig};

    #[test]
    fn values_read_back_bit_exact() {
        let p = ControllerParams::with_default_exponent(100.0, 0.1, 1.0).unwrap();
        let c = Controller::plant_compensating(p);
        let traj = simulate(Plant::UnstableLinear, &c, -37.3, SimConfig::new(1e-3, 0.5)).unwrap();
        let text = trajectory_csv(&traj);
        assert!(text.starts_with("t,x,u,V\n"));
        let [t, x, u, v] = read_columns(&text).unwrap();
        assert_eq!(t.len(), traj.len());
        for (got, want) in [(t, &traj.t), (x, &traj.x), (u, &traj.u), (v, &traj.v)] {
            assert!(got.iter().zip(want).all(|(a, b)| a.to_bits() == b.to_bits()));
        }
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_columns("time,x\n0,1\n").is_none());
    }
}
