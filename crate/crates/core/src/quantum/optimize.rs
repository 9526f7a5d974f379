//! One-dimensional search for the energy width that minimizes the simulated
//! proper-time variance at a fixed coordinate time.

use super::bound::energy_spread;
use super::moments::tau_moments_simulated;
use super::state::{gaussian_state, GaussianClockSpec};
use crate::error::{Error, Result};
use crate::units::UnitContext;

/// `1 / phi`, the golden-section interval shrink factor.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimize `f` on `[lo, hi]` by golden-section search; returns `(x, f(x), evaluations)`.
///
/// Errors from `f` abort the search.
pub fn golden_section<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    for _ in 0..max_iter {
        if (b - a).abs() <= xtol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    Ok(if f1 < f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockWidthOptimum {
    pub sigma_e_opt: f64,
    /// Simulated `(Delta tau(t))^2` at the optimum.
    pub min_var: f64,
    /// `hbar t / <H>` at the optimum.
    pub bound: f64,
    pub evaluations: usize,
}

/// Search range for `sigma_E`: `[1e-3 |e0|, |e0| / 12]`. The upper end keeps
/// the 12-sigma energy window clear of `E = 0`.
pub fn width_bracket(e0: f64) -> (f64, f64) {
    (1e-3 * e0.abs(), e0.abs() / 12.0)
}

/// Golden-section search over `ln sigma_E` of the simulated variance of a
/// Gaussian clock `(e0, sigma_E, p0, sigma_p)` at time `t`.
///
/// A minimum within 1% (of the log-bracket width) of either end is reported
/// as [`Error::BracketFailure`]: the variance has no interior minimum there.
pub fn optimize_clock_width(
    e0: f64,
    p0: f64,
    sigma_p: f64,
    t: f64,
    units: UnitContext,
) -> Result<ClockWidthOptimum> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("{t} must be positive"),
        });
    }
    let (lo, hi) = width_bracket(e0);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let objective = |log_sigma: f64| -> Result<f64> {
        let spec = GaussianClockSpec::new(e0, log_sigma.exp(), p0, sigma_p);
        let state = gaussian_state(&spec, t, units)?;
        Ok(tau_moments_simulated(&state, t)?.var_tau)
    };
    let (best, min_var, evaluations) = golden_section(objective, llo, lhi, 1e-4, 200)?;
    let edge = 0.01 * (lhi - llo);
    if best - llo < edge || lhi - best < edge {
        return Err(Error::BracketFailure {
            at: best.exp(),
            lo,
            hi,
        });
    }
    let sigma_e_opt = best.exp();
    let state = gaussian_state(
        &GaussianClockSpec::new(e0, sigma_e_opt, p0, sigma_p),
        t,
        units,
    )?;
    let (mean_h, _) = energy_spread(&state)?;
    Ok(ClockWidthOptimum {
        sigma_e_opt,
        min_var,
        bound: units.hbar * t / mean_h,
        evaluations,
    })
}
