//! Uncertainty relations for the quantized clock: the `tau`/`E` product and
//! the accumulated proper-time variance against `hbar t / <H>`.

use super::moments::{energy_tau_covariance, tau_moments_simulated, variance_law_predict};
use super::operators::{apply_diagonal, bra, expectation, real_part, Observable};
use super::state::MomentumSpaceState;
use crate::error::{Error, Result};

/// Slow-clock criterion for quoting the bound with the rest energy:
/// `c^2 <p^2> <= SLOW_CLOCK_RATIO <E>^2`.
pub const SLOW_CLOCK_RATIO: f64 = 1e-2;

fn second_moment(state: &MomentumSpaceState, f: impl Fn(f64, f64) -> f64 + Sync) -> Result<f64> {
    real_part(
        bra(state, &apply_diagonal(state, |e, p| f(e, p).powi(2))),
        1.0,
    )
}

fn spread(
    state: &MomentumSpaceState,
    obs: Observable,
    f: impl Fn(f64, f64) -> f64 + Sync,
) -> Result<(f64, f64)> {
    let mean = expectation(state, obs)?;
    let var = (second_moment(state, f)? - mean * mean).max(0.0);
    Ok((mean, var.sqrt()))
}

/// `(<H>, Delta H)`.
pub fn energy_spread(state: &MomentumSpaceState) -> Result<(f64, f64)> {
    let c = state.units.c;
    spread(state, Observable::H, move |e, p| e.hypot(c * p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyProduct {
    pub d_tau: f64,
    pub d_e: f64,
    pub product: f64,
    /// `hbar / 2`
    pub lower: f64,
    /// `Delta E / c^2`
    pub delta_m: f64,
}

pub fn uncertainty_product(state: &MomentumSpaceState) -> Result<UncertaintyProduct> {
    let (_, d_e) = spread(state, Observable::E, |e, _| e)?;
    let mean_tau = expectation(state, Observable::Tau)?;
    let d_tau = (expectation(state, Observable::TauSq)? - mean_tau * mean_tau)
        .max(0.0)
        .sqrt();
    let c = state.units.c;
    Ok(UncertaintyProduct {
        d_tau,
        d_e,
        product: d_tau * d_e,
        lower: 0.5 * state.units.hbar,
        delta_m: d_e / (c * c),
    })
}

/// Exact variance-law coefficients next to their sharp-energy estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakedApproximationReport {
    pub exact_quad: f64,
    /// `(Delta E)^2 / <H>^2`
    pub approx_quad: f64,
    pub exact_lin: f64,
    /// `(<[E, tau]_+> - 2 <E><tau>) / <H>`
    pub approx_lin: f64,
    /// `Delta H / <H>`
    pub sharpness: f64,
    pub mean_h: f64,
}

impl PeakedApproximationReport {
    pub fn quad_relative_error(&self) -> f64 {
        (self.exact_quad - self.approx_quad).abs() / self.approx_quad
    }
}

pub fn peaked_approximation_report(
    state: &MomentumSpaceState,
) -> Result<PeakedApproximationReport> {
    let (mean_h, d_h) = energy_spread(state)?;
    if !(mean_h > 0.0) {
        return Err(Error::NonPositiveEnergy(mean_h));
    }
    let (_, d_e) = spread(state, Observable::E, |e, _| e)?;
    let law = variance_law_predict(state)?;
    Ok(PeakedApproximationReport {
        exact_quad: law.quad,
        approx_quad: d_e * d_e / (mean_h * mean_h),
        exact_lin: law.lin,
        approx_lin: energy_tau_covariance(state)? / mean_h,
        sharpness: d_h / mean_h,
        mean_h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaleckerWignerCheck {
    pub t: f64,
    /// Simulated `(Delta tau(t))^2`.
    pub lhs: f64,
    /// `hbar t / <H>`
    pub rhs: f64,
    /// `hbar t / <E>`, quoted for slow clocks only.
    pub rhs_rest_energy: Option<f64>,
    pub satisfied: bool,
    /// `lhs - rhs`
    pub margin: f64,
    pub sharpness: f64,
}

pub fn salecker_wigner_check(state: &MomentumSpaceState, t: f64) -> Result<SaleckerWignerCheck> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("{t} must be non-negative"),
        });
    }
    let (mean_h, d_h) = energy_spread(state)?;
    if !(mean_h > 0.0) {
        return Err(Error::NonPositiveEnergy(mean_h));
    }
    state.check_cone_tip()?;
    let hbar = state.units.hbar;
    let c = state.units.c;
    let lhs = tau_moments_simulated(state, t)?.var_tau;
    let rhs = hbar * t / mean_h;
    let mean_e = expectation(state, Observable::E)?;
    let p2 = second_moment(state, |_, p| p)?;
    let slow = mean_e > 0.0 && c * c * p2 <= SLOW_CLOCK_RATIO * mean_e * mean_e;
    Ok(SaleckerWignerCheck {
        t,
        lhs,
        rhs,
        rhs_rest_energy: slow.then(|| hbar * t / mean_e),
        satisfied: lhs >= rhs,
        margin: lhs - rhs,
        sharpness: d_h / mean_h,
    })
}
