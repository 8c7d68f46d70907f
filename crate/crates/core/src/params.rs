//! Controller parameters: condition domain, accuracy band, time bound, exponent.

use crate::{Error, Result};

/// Exponent used when a caller does not pick one.
pub const DEFAULT_EXPONENT: f64 = 0.5;

/// The tuple `(x_c, x_s, T_c, m)`.
///
/// * `x_c` bounds the admissible initial states, `D_c = [-x_c, x_c]`.
/// * `x_s` is the prescribed accuracy, `D_s = [-x_s, x_s]`.
/// * `t_c` is the explicit settling-time bound in seconds.
/// * `m` is the shaping exponent, `0 < m < 1`.
///
/// Values are validated on construction and immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerParams {
    x_c: f64,
    x_s: f64,
    t_c: f64,
    m: f64,
}

fn positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { field, value })
    }
}

impl ControllerParams {
    pub fn new(x_c: f64, x_s: f64, t_c: f64, m: f64) -> Result<Self> {
        let x_c = positive("x_c", x_c)?;
        let x_s = positive("x_s", x_s)?;
        let t_c = positive("T_c", t_c)?;
        if x_s >= x_c {
            return Err(Error::AccuracyNotInsideDomain { x_s, x_c });
        }
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::ExponentOutOfRange { m });
        }
        Ok(Self { x_c, x_s, t_c, m })
    }

    /// Same as [`ControllerParams::new`] with `m = 0.5`.
    pub fn with_default_exponent(x_c: f64, x_s: f64, t_c: f64) -> Result<Self> {
        Self::new(x_c, x_s, t_c, DEFAULT_EXPONENT)
    }

    pub fn x_c(&self) -> f64 {
        self.x_c
    }

    pub fn x_s(&self) -> f64 {
        self.x_s
    }

    pub fn t_c(&self) -> f64 {
        self.t_c
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// `|x0| <= x_c`.
    pub fn contains(&self, x0: f64) -> bool {
        libm::fabs(x0) <= self.x_c
    }

    /// Gain of the explicit proportional law, `ln(x_c / x_s) / T_c`.
    pub fn proportional_gain(&self) -> f64 {
        libm::log(self.x_c / self.x_s) / self.t_c
    }

    /// Returns a copy with `T_c` replaced.
    pub fn with_t_c(&self, t_c: f64) -> Result<Self> {
        Self::new(self.x_c, self.x_s, t_c, self.m)
    }

    /// Practical Lyapunov level `V_ep(x) = x^2 / (2 x_s^2)`.
    pub fn practical_level(&self, x: f64) -> f64 {
        x * x / (2.0 * self.x_s * self.x_s)
    }
}
