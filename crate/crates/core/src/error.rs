use core::fmt;

/// Errors raised while building parameters or controllers, or while
/// integrating a closed loop.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter that must be a positive finite real was not.
    NonPositive { field: &'static str, value: f64 },
    /// `x_s >= x_c`: the accuracy band does not lie inside the condition domain.
    AccuracyNotInsideDomain { x_s: f64, x_c: f64 },
    /// The shaping exponent is outside the open interval (0, 1).
    ExponentOutOfRange { m: f64 },
    /// `G(W(x_c)) - G(W_ref)` is not positive, so the settling-time ratio is undefined.
    DegenerateCandidate { name: &'static str, denominator: f64 },
    /// The predefined-time law needs a finite `G(inf)`.
    PredefinedRequiresBoundedG { name: &'static str },
    /// The candidate failed a sampled admissibility condition at `witness`.
    GConditionViolation {
        name: &'static str,
        condition: &'static str,
        witness: f64,
    },
    /// Step size or horizon is not usable.
    InvalidStep { dt: f64, horizon: f64 },
    /// The integrated state stopped being finite.
    Divergence { step: usize },
    /// A residual needs at least two samples (three for central differences).
    InsufficientData { len: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositive { field, value } => {
                write!(f, "{field} must be a positive finite number, got {value}")
            }
            Error::AccuracyNotInsideDomain { x_s, x_c } => {
                write!(f, "accuracy radius x_s = {x_s} must be strictly below x_c = {x_c}")
            }
            Error::ExponentOutOfRange { m } => write!(f, "exponent m = {m} must lie in (0, 1)"),
            Error::DegenerateCandidate { name, denominator } => write!(
                f,
                "candidate {name} is degenerate on the domain (G(W(x_c)) - G(W_ref) = {denominator})"
            ),
            Error::PredefinedRequiresBoundedG { name } => {
                write!(f, "predefined-time control requires a finite G(inf); {name} has none")
            }
            Error::GConditionViolation {
                name,
                condition,
                witness,
            } => write!(f, "candidate {name} violates {condition} at x = {witness}"),
            Error::InvalidStep { dt, horizon } => {
                write!(
                    f,
                    "invalid step: dt = {dt}, horizon = {horizon} (need 0 < dt <= horizon)"
                )
            }
            Error::Divergence { step } => write!(f, "state became non-finite at step {step}"),
            Error::InsufficientData { len } => {
                write!(f, "not enough samples for a residual ({len})")
            }
        }
    }
}

impl core::error::Error for Error {}
