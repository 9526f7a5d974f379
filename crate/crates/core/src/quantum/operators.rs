//! Operators on [`MomentumSpaceState`]: the diagonal multipliers `E`, `p`,
//! `H = sqrt(E^2 + c^2 p^2)` and `D = E / H`, the proper-time operator
//! `tau = i hbar d/dE`, and unitary evolution under `H`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::state::MomentumSpaceState;
use crate::error::{Error, Result};
use crate::grid::{inner_product, ComplexField2D};
use crate::spectral::spectral_derivative_cols;

/// Largest tolerated imaginary part of an expectation value.
pub const IMAGINARY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    E,
    P,
    H,
    D,
    Tau,
    TauSq,
}

fn hamiltonian(e: f64, p: f64, c: f64) -> f64 {
    e.hypot(c * p)
}

/// `E / sqrt(E^2 + c^2 p^2)`, taken as zero at the cone tip itself.
fn dilation(e: f64, p: f64, c: f64) -> f64 {
    let h = hamiltonian(e, p, c);
    if h == 0.0 {
        0.0
    } else {
        e / h
    }
}

/// Multiplies the state by `weight(E, p)`.
pub fn apply_diagonal(
    state: &MomentumSpaceState,
    weight: impl Fn(f64, f64) -> f64 + Sync,
) -> Vec<Complex64> {
    let eg = state.e_grid();
    let pg = state.p_grid();
    let n = eg.len();
    let mut out = state.psi.values.clone();
    out.par_chunks_mut(n).enumerate().for_each(|(r, row)| {
        let p = pg.node(r);
        for (c, z) in row.iter_mut().enumerate() {
            *z *= weight(eg.node(c), p);
        }
    });
    out
}

pub fn apply_e(state: &MomentumSpaceState) -> Vec<Complex64> {
    apply_diagonal(state, |e, _| e)
}

pub fn apply_p(state: &MomentumSpaceState) -> Vec<Complex64> {
    apply_diagonal(state, |_, p| p)
}

pub fn apply_h(state: &MomentumSpaceState) -> Vec<Complex64> {
    let c = state.units.c;
    apply_diagonal(state, move |e, p| hamiltonian(e, p, c))
}

pub fn apply_d(state: &MomentumSpaceState) -> Result<Vec<Complex64>> {
    state.check_cone_tip()?;
    let c = state.units.c;
    Ok(apply_diagonal(state, move |e, p| dilation(e, p, c)))
}

/// `tau psi = i hbar dpsi/dE`, spectrally along each row.
pub fn apply_tau(state: &MomentumSpaceState) -> Result<ComplexField2D> {
    state.check_health()?;
    let mut values = spectral_derivative_cols(&state.psi)?;
    let factor = Complex64::new(0.0, state.units.hbar);
    values.par_iter_mut().for_each(|z| *z *= factor);
    Ok(state.psi.with_values(values))
}

/// `exp(-i t H / hbar) psi`, exact pointwise.
pub fn evolve(state: &MomentumSpaceState, t: f64) -> MomentumSpaceState {
    let eg = state.e_grid();
    let pg = state.p_grid();
    let (c, hbar) = (state.units.c, state.units.hbar);
    let n = eg.len();
    let mut values = state.psi.values.clone();
    values.par_chunks_mut(n).enumerate().for_each(|(r, row)| {
        let p = pg.node(r);
        for (k, z) in row.iter_mut().enumerate() {
            *z *= Complex64::from_polar(1.0, -t * hamiltonian(eg.node(k), p, c) / hbar);
        }
    });
    state.with_values(values)
}

/// `<psi|a>` under grid quadrature.
pub(crate) fn bra(state: &MomentumSpaceState, a: &[Complex64]) -> Complex64 {
    inner_product(&state.psi.values, a, state.cell_volume())
}

pub(crate) fn real_part(z: Complex64, scale: f64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOLERANCE * scale.max(1.0) {
        return Err(Error::ImaginaryResidue(z.im));
    }
    Ok(z.re)
}

/// `<psi|A|psi>`; the imaginary residue must stay below [`IMAGINARY_TOLERANCE`].
pub fn expectation(state: &MomentumSpaceState, obs: Observable) -> Result<f64> {
    match obs {
        Observable::E => real_part(bra(state, &apply_e(state)), 1.0),
        Observable::P => real_part(bra(state, &apply_p(state)), 1.0),
        Observable::H => real_part(bra(state, &apply_h(state)), 1.0),
        Observable::D => real_part(bra(state, &apply_d(state)?), 1.0),
        Observable::Tau => {
            let t = apply_tau(state)?;
            let z = bra(state, &t.values);
            real_part(z, z.norm())
        }
        Observable::TauSq => {
            // tau is Hermitian on the grid, so <tau^2> = ||tau psi||^2
            let t = apply_tau(state)?;
            Ok(inner_product(&t.values, &t.values, state.cell_volume()).re)
        }
    }
}

/// `||(tau E - E tau) psi - i hbar psi|| / ||psi||`.
pub fn commutator_residual(state: &MomentumSpaceState) -> Result<f64> {
    let e_psi = state.with_values(apply_e(state));
    let tau_e = apply_tau(&e_psi)?;
    let tau = apply_tau(state)?;
    let e_tau = apply_e(&state.with_values(tau.values));
    let ihbar = Complex64::new(0.0, state.units.hbar);
    let dv = state.cell_volume();
    let resid: f64 = tau_e
        .values
        .iter()
        .zip(&e_tau)
        .zip(&state.psi.values)
        .map(|((a, b), psi)| (a - b - ihbar * psi).norm_sqr())
        .sum::<f64>()
        * dv;
    Ok((resid / state.norm_squared()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::state::{gaussian_state, GaussianClockSpec};
    use crate::units::UnitContext;

    fn nat() -> UnitContext {
        UnitContext::natural()
    }

    #[test]
    fn gaussian_means() {
        let s = gaussian_state(&GaussianClockSpec::new(10.0, 0.5, 0.0, 0.5), 1.0, nat()).unwrap();
        assert!((expectation(&s, Observable::E).unwrap() - 10.0).abs() < 1e-8);
        assert!(expectation(&s, Observable::Tau).unwrap().abs() < 1e-10);
        let var_e = real_part(bra(&s, &apply_diagonal(&s, |e, _| e * e)), 1.0).unwrap() - 100.0;
        assert!((var_e.sqrt() / 0.5 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn imprinted_proper_time() {
        let s = gaussian_state(
            &GaussianClockSpec::new(10.0, 0.5, 0.0, 0.5).with_tau0(3.0),
            1.0,
            nat(),
        )
        .unwrap();
        assert!((expectation(&s, Observable::Tau).unwrap() - 3.0).abs() < 1e-8);
    }

    #[test]
    fn sharp_rest_state_has_unit_dilation() {
        let s = gaussian_state(&GaussianClockSpec::new(1.0, 1e-3, 0.0, 1e-4), 1.0, nat()).unwrap();
        assert!((expectation(&s, Observable::D).unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn boosted_dilation() {
        let s = gaussian_state(&GaussianClockSpec::new(10.0, 0.1, 7.5, 0.1), 1.0, nat()).unwrap();
        assert!((expectation(&s, Observable::D).unwrap() - 0.8).abs() < 0.005);
    }

    #[test]
    fn negative_energy_dilation() {
        let s = gaussian_state(&GaussianClockSpec::new(-10.0, 0.5, 0.0, 0.05), 1.0, nat()).unwrap();
        assert!((expectation(&s, Observable::D).unwrap() + 1.0).abs() < 1e-4);
        assert!(expectation(&s, Observable::H).unwrap() > 0.0);
    }

    #[test]
    fn cone_tip_state_rejects_dilation() {
        let s = gaussian_state(&GaussianClockSpec::new(0.5, 0.5, 0.0, 0.5), 1.0, nat()).unwrap();
        assert_eq!(
            expectation(&s, Observable::D),
            Err(Error::UndefinedDilation)
        );
        assert!(expectation(&s, Observable::E).is_ok());
    }

    #[test]
    fn evolution_is_unitary_and_composes() {
        let s = gaussian_state(&GaussianClockSpec::new(10.0, 0.5, 1.0, 0.5), 100.0, nat()).unwrap();
        assert_eq!(evolve(&s, 0.0), s);
        assert!((evolve(&s, 100.0).norm_squared() - 1.0).abs() < 1e-12);
        let a = evolve(&evolve(&s, 30.0), 45.0);
        let b = evolve(&s, 75.0);
        let err = a
            .psi
            .values
            .iter()
            .zip(&b.psi.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn canonical_commutator() {
        let s = gaussian_state(
            &GaussianClockSpec::new(10.0, 0.5, 0.0, 0.5).with_tau0(2.0),
            1.0,
            nat(),
        )
        .unwrap();
        assert!(commutator_residual(&s).unwrap() <= 1e-8);
    }
}
