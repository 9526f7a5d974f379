//! Proper-time moments of an evolving clock and the exact quadratic law
//! `Var tau(t) = quad t^2 + lin t + const`.

use super::operators::{
    apply_d, apply_e, apply_tau, bra, evolve, expectation, real_part, Observable,
};
use super::state::MomentumSpaceState;
use crate::error::Result;
use crate::grid::inner_product;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauMoments {
    pub t: f64,
    pub mean_tau: f64,
    pub var_tau: f64,
}

/// Moments of `tau` in `exp(-i t H) psi`.
pub fn tau_moments_simulated(state: &MomentumSpaceState, t: f64) -> Result<TauMoments> {
    let evolved = evolve(state, t);
    let tau_psi = apply_tau(&evolved)?;
    let dv = state.cell_volume();
    let mean_z = inner_product(&evolved.psi.values, &tau_psi.values, dv);
    let mean_tau = real_part(mean_z, mean_z.norm())?;
    let second = inner_product(&tau_psi.values, &tau_psi.values, dv).re;
    Ok(TauMoments {
        t,
        mean_tau,
        var_tau: (second - mean_tau * mean_tau).max(0.0),
    })
}

/// t = 0 coefficients of the proper-time variance law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceLawCoefficients {
    /// `<D^2> - <D>^2`
    pub quad: f64,
    /// `<[D, tau]_+> - 2 <D><tau>`
    pub lin: f64,
    /// `<tau^2> - <tau>^2`
    pub konst: f64,
    pub mean_d: f64,
    pub mean_tau: f64,
}

impl VarianceLawCoefficients {
    pub fn variance_at(&self, t: f64) -> f64 {
        self.quad * t * t + self.lin * t + self.konst
    }

    pub fn mean_at(&self, t: f64) -> f64 {
        self.mean_d * t + self.mean_tau
    }

    /// `lin^2 <= 4 quad const` up to `tol` (relative to `4 quad const`).
    pub fn satisfies_cauchy_schwarz(&self, tol: f64) -> bool {
        let rhs = 4.0 * self.quad * self.konst;
        self.lin * self.lin <= rhs + tol * rhs.max(f64::MIN_POSITIVE)
    }
}

pub fn variance_law_predict(state: &MomentumSpaceState) -> Result<VarianceLawCoefficients> {
    let d_psi = apply_d(state)?;
    let tau_psi = apply_tau(state)?;
    let dv = state.cell_volume();

    let mean_d = real_part(bra(state, &d_psi), 1.0)?;
    // centred form avoids cancellation when D is nearly sharp
    let centred: Vec<_> = d_psi
        .iter()
        .zip(&state.psi.values)
        .map(|(d, v)| d - v * mean_d)
        .collect();
    let quad = inner_product(&centred, &centred, dv).re;
    let tau_z = bra(state, &tau_psi.values);
    let mean_tau = real_part(tau_z, tau_z.norm())?;
    let mean_tau2 = inner_product(&tau_psi.values, &tau_psi.values, dv).re;
    // <D tau + tau D> = 2 Re <D psi | tau psi>
    let anti = 2.0 * inner_product(&d_psi, &tau_psi.values, dv).re;

    Ok(VarianceLawCoefficients {
        quad,
        lin: anti - 2.0 * mean_d * mean_tau,
        konst: (mean_tau2 - mean_tau * mean_tau).max(0.0),
        mean_d,
        mean_tau,
    })
}

/// `<[E, tau]_+> - 2 <E><tau>`.
pub fn energy_tau_covariance(state: &MomentumSpaceState) -> Result<f64> {
    let e_psi = apply_e(state);
    let tau_psi = apply_tau(state)?;
    let dv = state.cell_volume();
    let anti = 2.0 * inner_product(&e_psi, &tau_psi.values, dv).re;
    Ok(anti - 2.0 * expectation(state, Observable::E)? * expectation(state, Observable::Tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::state::{gaussian_state, GaussianClockSpec};
    use crate::units::UnitContext;

    #[test]
    fn rest_clock_ticks_at_unit_rate() {
        let spec = GaussianClockSpec::new(10.0, 0.5, 0.0, 1e-3).with_tau0(1.5);
        let s = gaussian_state(&spec, 50.0, UnitContext::natural()).unwrap();
        let m = tau_moments_simulated(&s, 50.0).unwrap();
        assert!((m.mean_tau - 51.5).abs() < 1e-6);
    }

    #[test]
    fn simulated_variance_follows_the_law() {
        let spec = GaussianClockSpec::new(10.0, 0.5, 0.0, 0.5);
        let s = gaussian_state(&spec, 50.0, UnitContext::natural()).unwrap();
        let law = variance_law_predict(&s).unwrap();
        for t in [10.0, 20.0, 40.0, 50.0] {
            let m = tau_moments_simulated(&s, t).unwrap();
            assert!(
                (m.var_tau / law.variance_at(t) - 1.0).abs() < 1e-8,
                "t = {t}"
            );
            assert!((m.mean_tau - law.mean_at(t)).abs() < 1e-8 * law.mean_at(t).abs());
        }
        assert!(law.lin.abs() < 1e-10);
        assert!((law.konst - 1.0).abs() < 1e-6);
        assert!(law.satisfies_cauchy_schwarz(1e-8));
    }

    #[test]
    fn sharp_dilation_gives_flat_variance() {
        let spec = GaussianClockSpec::new(10.0, 1e-3, 0.0, 1e-4);
        let s = gaussian_state(&spec, 1.0, UnitContext::natural()).unwrap();
        let law = variance_law_predict(&s).unwrap();
        assert!(law.quad < 1e-15);
    }

    #[test]
    fn gaussian_energy_tau_covariance_vanishes() {
        let spec = GaussianClockSpec::new(10.0, 0.5, 1.0, 0.5).with_tau0(-4.0);
        let s = gaussian_state(&spec, 1.0, UnitContext::natural()).unwrap();
        assert!(energy_tau_covariance(&s).unwrap().abs() < 1e-9);
    }
}
