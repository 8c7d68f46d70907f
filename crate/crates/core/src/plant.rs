/// Scalar open-loop dynamics `x' = drift(x) + u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Plant {
    /// `x' = u`
    #[default]
    Integrator,
    /// `x' = x + u`
    UnstableLinear,
}

impl Plant {
    pub fn drift(&self, x: f64) -> f64 {
        match self {
            Plant::Integrator => 0.0,
            Plant::UnstableLinear => x,
        }
    }
}
