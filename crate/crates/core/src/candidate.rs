//! Settling-time shaping functions `G`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_2_PI;
use core::fmt;

/// A candidate shaping function `G` with its derivative and, when it has
/// one, its finite limit at infinity.
///
/// The limit is carried explicitly because the predefined-time law needs
/// `G(inf)` exactly.
#[derive(Clone, Copy)]
pub struct GCandidate {
    pub name: &'static str,
    eval: fn(f64) -> f64,
    deriv: fn(f64) -> f64,
    pub limit_at_infinity: Option<f64>,
}

impl GCandidate {
    pub const fn new(
        name: &'static str,
        eval: fn(f64) -> f64,
        deriv: fn(f64) -> f64,
        limit_at_infinity: Option<f64>,
    ) -> Self {
        Self {
            name,
            eval,
            deriv,
            limit_at_infinity,
        }
    }

    /// `G(s)`.
    pub fn eval(&self, s: f64) -> f64 {
        (self.eval)(s)
    }

    /// `dG/ds`.
    pub fn deriv(&self, s: f64) -> f64 {
        (self.deriv)(s)
    }

    pub fn is_bounded(&self) -> bool {
        self.limit_at_infinity.is_some()
    }
}

impl fmt::Debug for GCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GCandidate")
            .field("name", &self.name)
            .field("limit_at_infinity", &self.limit_at_infinity)
            .finish()
    }
}

impl PartialEq for GCandidate {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.limit_at_infinity == other.limit_at_infinity
    }
}

fn log_ratio(s: f64) -> f64 {
    libm::log(s)
}

fn log_ratio_deriv(s: f64) -> f64 {
    1.0 / s
}

fn identity(s: f64) -> f64 {
    s
}

fn identity_deriv(_s: f64) -> f64 {
    1.0
}

fn bounded_exp(s: f64) -> f64 {
    -libm::expm1(-s)
}

fn bounded_exp_deriv(s: f64) -> f64 {
    libm::exp(-s)
}

fn arctan(s: f64) -> f64 {
    FRAC_2_PI * libm::atan(s)
}

fn arctan_deriv(s: f64) -> f64 {
    FRAC_2_PI / (1.0 + s * s)
}

/// `G(s) = ln s`, defined for `s > 0`, unbounded.
pub const LOG_RATIO: GCandidate = GCandidate::new("log_ratio", log_ratio, log_ratio_deriv, None);
/// `G(s) = s`, unbounded.
pub const IDENTITY: GCandidate = GCandidate::new("identity", identity, identity_deriv, None);
/// `G(s) = 1 - e^{-s}`, `G(inf) = 1`.
pub const BOUNDED_EXP: GCandidate = GCandidate::new("bounded_exp", bounded_exp, bounded_exp_deriv, Some(1.0));
/// `G(s) = (2/pi) atan(s)`, `G(inf) = 1`.
pub const ARCTAN: GCandidate = GCandidate::new("arctan", arctan, arctan_deriv, Some(1.0));

/// The candidates shipped with the toolkit.
pub fn shipped_g_candidates() -> Vec<GCandidate> {
    alloc::vec![LOG_RATIO, IDENTITY, BOUNDED_EXP, ARCTAN]
}

/// Looks up a shipped candidate by name.
pub fn find(name: &str) -> Option<GCandidate> {
    shipped_g_candidates().into_iter().find(|g| g.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_difference(g: &GCandidate, s: f64) -> f64 {
        let h = 1e-6 * s;
        (g.eval(s + h) - g.eval(s - h)) / (2.0 * h)
    }

    #[test]
    fn shipped_values() {
        assert_eq!(shipped_g_candidates().len(), 4);
        assert_eq!(BOUNDED_EXP.eval(0.0), 0.0);
        assert_eq!(ARCTAN.limit_at_infinity, Some(1.0));
        assert!((FRAC_2_PI * core::f64::consts::FRAC_PI_2 - 1.0).abs() < 1e-15);
        // 1 - e^-2
        assert!((BOUNDED_EXP.eval(2.0) - 0.864_664_716_763_387_3).abs() < 1e-15);
        assert!(LOG_RATIO.limit_at_infinity.is_none());
        assert!(IDENTITY.limit_at_infinity.is_none());
        assert_eq!(find("arctan"), Some(ARCTAN));
        assert!(find("sinusoid").is_none());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for g in shipped_g_candidates() {
            // the bounded candidates flatten out past s ~ 10, where a
            // difference of rounded values no longer resolves G'
            for k in -30..=10 {
                let s = libm::pow(10.0, k as f64 / 10.0);
                let fd = central_difference(&g, s);
                let d = g.deriv(s);
                let rel = (fd - d).abs() / d.abs().max(1e-300);
                assert!(rel < 1e-6, "{} at s={s}: fd={fd} deriv={d} rel={rel}", g.name);
            }
        }
    }

    #[test]
    fn monotone_and_below_limit() {
        for g in shipped_g_candidates() {
            let mut prev = f64::NEG_INFINITY;
            for k in 0..2000 {
                let s = 1e-4 + k as f64 * 0.05;
                let v = g.eval(s);
                assert!(v >= prev, "{} not monotone at {s}", g.name);
                assert!(g.deriv(s) >= 0.0);
                if let Some(lim) = g.limit_at_infinity {
                    assert!(v <= lim);
                }
                prev = v;
            }
        }
    }
}
