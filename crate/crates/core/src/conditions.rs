//! Sampled admissibility check for a shaping function on `D_c`.
//!
//! Two conditions are checked on a uniform grid over `[-x_c, x_c]`:
//!
//! * **continuity**: `G(W(x))` is finite at every sample and at the reference
//!   state, and no gap between neighbouring samples survives repeated
//!   bisection (a jump keeps its size while a continuous function's
//!   differences shrink);
//! * **inverse derivative**: `[dG/dW]^-1` is positive and finite at every
//!   sample other than the origin.
//!
//! Sampling only catches gross violations. Right-continuity in particular is
//! not certified.

use alloc::vec::Vec;

use crate::candidate::GCandidate;
use crate::controller::Composition;
use crate::params::ControllerParams;

pub const CONTINUITY: &str = "continuity of G(W(x))";
pub const INVERSE_DERIVATIVE: &str = "positive bounded inverse derivative";

// Enough halvings to reach subnormals next to 0, where |x|^m with small m
// only decays after hundreds of levels; elsewhere representability stops
// the loop after ~53.
const BISECTION_DEPTH: usize = 1100;
const QUANTUM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionOutcome {
    Pass,
    Fail { witness: f64, reason: &'static str },
}

impl ConditionOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionOutcome::Pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GConditionReport {
    pub name: &'static str,
    pub composition: Composition,
    pub samples: usize,
    pub continuity: ConditionOutcome,
    pub inverse_derivative: ConditionOutcome,
}

impl GConditionReport {
    pub fn passed(&self) -> bool {
        self.continuity.passed() && self.inverse_derivative.passed()
    }

    /// The first failing condition and its witness state.
    pub fn first_violation(&self) -> Option<(&'static str, f64)> {
        match (self.continuity, self.inverse_derivative) {
            (ConditionOutcome::Fail { witness, .. }, _) => Some((CONTINUITY, witness)),
            (_, ConditionOutcome::Fail { witness, .. }) => Some((INVERSE_DERIVATIVE, witness)),
            _ => None,
        }
    }
}

/// Checks `g` under the default `|x|^m` composition.
pub fn verify_g_conditions(g: &GCandidate, params: &ControllerParams, n_samples: usize) -> GConditionReport {
    verify_g_conditions_with(g, params, Composition::default(), n_samples)
}

pub fn verify_g_conditions_with(
    g: &GCandidate,
    params: &ControllerParams,
    composition: Composition,
    n_samples: usize,
) -> GConditionReport {
    let n = n_samples.max(2);
    let segments = sample_segments(params, composition, n);
    let h = |x: f64| g.eval(composition.level(params, x));

    GConditionReport {
        name: g.name,
        composition,
        samples: n,
        continuity: check_continuity(&h, &segments),
        inverse_derivative: check_inverse_derivative(g, params, composition, &segments),
    }
}

/// Sorted sample segments. Each segment is checked for continuity on its own;
/// the reference state is included as a sample.
fn sample_segments(params: &ControllerParams, composition: Composition, n: usize) -> Vec<Vec<f64>> {
    let x_c = params.x_c();
    match composition {
        Composition::AbsPower | Composition::HalfSquare => {
            let mut xs: Vec<f64> = (0..n)
                .map(|i| -x_c + 2.0 * x_c * i as f64 / (n - 1) as f64)
                .filter(|x| *x != 0.0)
                .collect();
            xs.push(0.0);
            xs.sort_by(f64::total_cmp);
            alloc::vec![xs]
        }
        Composition::PracticalBand => {
            let x_s = params.x_s();
            let half = (n / 2).max(2);
            let pos: Vec<f64> = (0..half)
                .map(|i| x_s + (x_c - x_s) * i as f64 / (half - 1) as f64)
                .collect();
            let neg: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
            alloc::vec![neg, pos]
        }
    }
}

fn check_continuity(h: &impl Fn(f64) -> f64, segments: &[Vec<f64>]) -> ConditionOutcome {
    for seg in segments {
        for &x in seg {
            if !h(x).is_finite() {
                return ConditionOutcome::Fail {
                    witness: x,
                    reason: "G(W(x)) is not finite",
                };
            }
        }
        for pair in seg.windows(2) {
            if let Some(witness) = persistent_jump(h, pair[0], pair[1]) {
                return ConditionOutcome::Fail {
                    witness,
                    reason: "jump survives bisection",
                };
            }
        }
    }
    ConditionOutcome::Pass
}

/// Follows the half with the larger difference down to machine resolution.
/// Returns the location if the difference never drops below half its
/// starting size.
fn persistent_jump(h: &impl Fn(f64) -> f64, a: f64, b: f64) -> Option<f64> {
    let (mut lo, mut hi) = (a, b);
    let (mut h_lo, mut h_hi) = (h(lo), h(hi));
    let start = libm::fabs(h_hi - h_lo);
    // steps at rounding level are quantization, not jumps
    if start <= QUANTUM * (1.0 + libm::fabs(h_lo).max(libm::fabs(h_hi))) {
        return None;
    }
    for _ in 0..BISECTION_DEPTH {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let h_mid = h(mid);
        if libm::fabs(h_mid - h_lo) >= libm::fabs(h_hi - h_mid) {
            hi = mid;
            h_hi = h_mid;
        } else {
            lo = mid;
            h_lo = h_mid;
        }
        if libm::fabs(h_hi - h_lo) < 0.5 * start {
            return None;
        }
    }
    Some(lo + (hi - lo) / 2.0)
}

fn check_inverse_derivative(
    g: &GCandidate,
    params: &ControllerParams,
    composition: Composition,
    segments: &[Vec<f64>],
) -> ConditionOutcome {
    for &x in segments.iter().flatten() {
        if x == 0.0 {
            continue;
        }
        let d = g.deriv(composition.level(params, x));
        if d.is_nan() || d <= 0.0 {
            return ConditionOutcome::Fail {
                witness: x,
                reason: "dG/dW is not positive",
            };
        }
        if !(1.0 / d).is_finite() {
            return ConditionOutcome::Fail {
                witness: x,
                reason: "inverse derivative is unbounded",
            };
        }
    }
    ConditionOutcome::Pass
}
