//! Clock states `psi(E, p)` in the rest-energy / momentum representation.
//!
//! Storage is row-major with one row per momentum node, so each row is a line
//! along the E axis and `tau = i hbar d/dE` acts row by row.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{trapezoid_norm_squared, ComplexField2D, UniformGrid};
use crate::spectral::BAND_LIMIT_RATIO;
use crate::units::UnitContext;

/// Minimum half-window, in standard deviations, a Gaussian must be given.
pub const MIN_COVERAGE_SIGMAS: f64 = 8.0;
/// Half-window used by [`default_grids`].
pub const DEFAULT_COVERAGE_SIGMAS: f64 = 12.0;
pub const DEFAULT_E_NODES: usize = 1024;
pub const DEFAULT_P_NODES: usize = 256;
/// Cells around `E = p = 0` that must carry no amplitude.
pub const CONE_TIP_CELLS: f64 = 5.0;

/// What to do when a state is not numerically band-limited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HealthPolicy {
    #[default]
    Warn,
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSpaceState {
    /// Rows are momentum nodes, columns rest-energy nodes.
    pub psi: ComplexField2D,
    pub units: UnitContext,
    pub policy: HealthPolicy,
}

impl MomentumSpaceState {
    /// Samples `amplitude(E, p)` and normalizes it.
    pub fn from_fn(
        e_grid: UniformGrid,
        p_grid: UniformGrid,
        units: UnitContext,
        amplitude: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let psi = ComplexField2D::from_fn(p_grid, e_grid, |p, e| amplitude(e, p));
        Self::from_field(psi, units)
    }

    pub fn from_field(mut psi: ComplexField2D, units: UnitContext) -> Result<Self> {
        let norm = trapezoid_norm_squared(&psi);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "psi",
                reason: format!("cannot normalize a state with norm {norm}"),
            });
        }
        let s = 1.0 / norm.sqrt();
        psi.values.iter_mut().for_each(|z| *z *= s);
        let state = Self {
            psi,
            units,
            policy: HealthPolicy::Warn,
        };
        state.check_health()?;
        Ok(state)
    }

    pub fn strict(mut self) -> Self {
        self.policy = HealthPolicy::Strict;
        self
    }

    pub fn e_grid(&self) -> &UniformGrid {
        &self.psi.cols
    }

    pub fn p_grid(&self) -> &UniformGrid {
        &self.psi.rows
    }

    pub fn cell_volume(&self) -> f64 {
        self.e_grid().step() * self.p_grid().step()
    }

    pub fn norm_squared(&self) -> f64 {
        trapezoid_norm_squared(&self.psi)
    }

    /// Same grids and policy, new amplitudes (not renormalized).
    pub fn with_values(&self, values: Vec<Complex64>) -> Self {
        Self {
            psi: self.psi.with_values(values),
            units: self.units,
            policy: self.policy,
        }
    }

    /// Boundary amplitude ratios `(E axis, p axis)`.
    pub fn boundary_ratios(&self) -> (f64, f64) {
        (self.psi.col_boundary_ratio(), self.psi.row_boundary_ratio())
    }

    /// Warns, or errors under [`HealthPolicy::Strict`], when either axis is
    /// not decayed to [`BAND_LIMIT_RATIO`] at its boundary.
    pub fn check_health(&self) -> Result<()> {
        let (e, p) = self.boundary_ratios();
        for (axis, ratio) in [("E", e), ("p", p)] {
            if ratio >= BAND_LIMIT_RATIO {
                match self.policy {
                    HealthPolicy::Strict => {
                        return Err(Error::Aliasing {
                            axis,
                            ratio,
                            limit: BAND_LIMIT_RATIO,
                        })
                    }
                    HealthPolicy::Warn => {
                        log::warn!(
                            "state not band-limited on the {axis} axis: boundary ratio {ratio:e}"
                        )
                    }
                }
            }
        }
        Ok(())
    }

    /// Errors when amplitude above the band-limit threshold lies within
    /// [`CONE_TIP_CELLS`] cells of `E = p = 0`, where `E / H` is undefined.
    pub fn check_cone_tip(&self) -> Result<()> {
        let (eg, pg) = (self.e_grid(), self.p_grid());
        let (re, rp) = (CONE_TIP_CELLS * eg.step(), CONE_TIP_CELLS * pg.step());
        let peak = self.psi.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let threshold = BAND_LIMIT_RATIO * peak;
        let rows: Vec<usize> = (0..pg.len()).filter(|&r| pg.node(r).abs() <= rp).collect();
        if rows.is_empty() {
            return Ok(());
        }
        for c in (0..eg.len()).filter(|&c| eg.node(c).abs() <= re) {
            if rows.iter().any(|&r| self.psi.at(r, c).norm() > threshold) {
                return Err(Error::UndefinedDilation);
            }
        }
        Ok(())
    }

    /// `|psi|^2` integrated over p, as `(E, density)` pairs.
    pub fn energy_marginal(&self) -> Vec<(f64, f64)> {
        let dp = self.p_grid().step();
        self.e_grid()
            .nodes()
            .enumerate()
            .map(|(c, e)| {
                let d = (0..self.p_grid().len())
                    .map(|r| self.psi.at(r, c).norm_sqr())
                    .sum::<f64>()
                    * dp;
                (e, d)
            })
            .collect()
    }

    /// `|psi|^2` integrated over E, as `(p, density)` pairs.
    pub fn momentum_marginal(&self) -> Vec<(f64, f64)> {
        let de = self.e_grid().step();
        self.p_grid()
            .nodes()
            .enumerate()
            .map(|(r, p)| {
                (
                    p,
                    self.psi.row(r).iter().map(|z| z.norm_sqr()).sum::<f64>() * de,
                )
            })
            .collect()
    }
}

/// Product Gaussian clock state with imprinted proper-time and position offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianClockSpec {
    pub e0: f64,
    pub sigma_e: f64,
    pub tau0: f64,
    pub p0: f64,
    pub sigma_p: f64,
    pub x0: f64,
}

impl GaussianClockSpec {
    /// Clock at rest in momentum, no offsets.
    pub fn new(e0: f64, sigma_e: f64, p0: f64, sigma_p: f64) -> Self {
        Self {
            e0,
            sigma_e,
            tau0: 0.0,
            p0,
            sigma_p,
            x0: 0.0,
        }
    }

    pub fn with_tau0(mut self, tau0: f64) -> Self {
        self.tau0 = tau0;
        self
    }

    pub fn with_x0(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("sigma_e", self.sigma_e), ("sigma_p", self.sigma_p)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("{v} must be positive"),
                });
            }
        }
        Ok(())
    }
}

fn check_coverage(axis: &str, grid: &UniformGrid, center: f64, sigma: f64) -> Result<()> {
    let need = MIN_COVERAGE_SIGMAS * sigma;
    // the last node is max - step
    let (lo, hi) = (center - grid.min(), grid.max() - grid.step() - center);
    if lo < need || hi < need {
        return Err(Error::GridTooSmall(format!(
            "{axis} window [{}, {}) covers {:.2}/{:.2} sigma below/above {center}; need {MIN_COVERAGE_SIGMAS}",
            grid.min(),
            grid.max(),
            lo / sigma,
            hi / sigma
        )));
    }
    Ok(())
}

/// `psi ~ exp(-(E-e0)^2/4 sE^2 - i E tau0/hbar) exp(-(p-p0)^2/4 sp^2 + i p x0/hbar)`.
pub fn make_gaussian_state(
    spec: &GaussianClockSpec,
    e_grid: UniformGrid,
    p_grid: UniformGrid,
    units: UnitContext,
) -> Result<MomentumSpaceState> {
    spec.validate()?;
    check_coverage("E", &e_grid, spec.e0, spec.sigma_e)?;
    check_coverage("p", &p_grid, spec.p0, spec.sigma_p)?;
    let hbar = units.hbar;
    let s = *spec;
    MomentumSpaceState::from_fn(e_grid, p_grid, units, move |e, p| {
        let envelope = (-(e - s.e0).powi(2) / (4.0 * s.sigma_e * s.sigma_e)
            - (p - s.p0).powi(2) / (4.0 * s.sigma_p * s.sigma_p))
            .exp();
        Complex64::from_polar(envelope, (-e * s.tau0 + p * s.x0) / hbar)
    })
}

/// Grids for `spec` that stay alias-free while evolving up to `t_max`.
///
/// The E window is `e0 +- 12 sigma_E`; its node count is the larger of 1024
/// and what keeps the conjugate proper-time period `2 pi hbar / dE` wider
/// than twice `|tau0| + t_max + 16 hbar / (2 sigma_E)`.
pub fn default_grids(
    spec: &GaussianClockSpec,
    t_max: f64,
    units: &UnitContext,
) -> Result<(UniformGrid, UniformGrid)> {
    spec.validate()?;
    let half_e = DEFAULT_COVERAGE_SIGMAS * spec.sigma_e;
    let reach = spec.tau0.abs() + t_max.abs() + 16.0 * units.hbar / (2.0 * spec.sigma_e);
    let max_step = std::f64::consts::PI * units.hbar / reach;
    let needed = (2.0 * half_e / max_step).ceil() as usize;
    let n_e = needed.next_power_of_two().max(DEFAULT_E_NODES);
    let e_grid = UniformGrid::centered(spec.e0, half_e, n_e)?;
    let p_grid = UniformGrid::centered(
        spec.p0,
        DEFAULT_COVERAGE_SIGMAS * spec.sigma_p,
        DEFAULT_P_NODES,
    )?;
    Ok((e_grid, p_grid))
}

/// [`make_gaussian_state`] on [`default_grids`].
pub fn gaussian_state(
    spec: &GaussianClockSpec,
    t_max: f64,
    units: UnitContext,
) -> Result<MomentumSpaceState> {
    let (e_grid, p_grid) = default_grids(spec, t_max, &units)?;
    make_gaussian_state(spec, e_grid, p_grid, units)
}

/// Gaussian with a quadratic energy phase `exp(i beta E^2 / hbar)` (beta in
/// time/energy): the chirp shifts `<tau>` by `-2 beta e0` and widens
/// `Delta tau` without changing `Delta E`.
pub fn chirped_gaussian_state(
    spec: &GaussianClockSpec,
    beta: f64,
    t_max: f64,
    units: UnitContext,
) -> Result<MomentumSpaceState> {
    let sweep = 2.0 * beta.abs() * (spec.e0.abs() + DEFAULT_COVERAGE_SIGMAS * spec.sigma_e);
    let (e_grid, p_grid) = default_grids(&spec.with_tau0(spec.tau0.abs() + sweep), t_max, &units)?;
    let base = make_gaussian_state(spec, e_grid, p_grid, units)?;
    let hbar = units.hbar;
    let cols = base.e_grid().clone();
    let n = cols.len();
    let values = base
        .psi
        .values
        .iter()
        .enumerate()
        .map(|(k, z)| z * Complex64::from_polar(1.0, beta * cols.node(k % n).powi(2) / hbar))
        .collect();
    Ok(base.with_values(values))
}

/// Equal-weight superposition of two copies of `spec` centred at
/// `e0 +- separation`.
pub fn two_hump_state(
    spec: &GaussianClockSpec,
    separation: f64,
    t_max: f64,
    units: UnitContext,
) -> Result<MomentumSpaceState> {
    let (e_default, p_grid) = default_grids(spec, t_max, &units)?;
    let half = DEFAULT_COVERAGE_SIGMAS * spec.sigma_e + separation.abs();
    let widen = half / (DEFAULT_COVERAGE_SIGMAS * spec.sigma_e);
    let n = ((e_default.len() as f64 * widen).ceil() as usize).next_power_of_two();
    let e_grid = UniformGrid::centered(spec.e0, half, n)?;
    let hbar = units.hbar;
    let s = *spec;
    let g = move |x: f64| (-x * x / (4.0 * s.sigma_e * s.sigma_e)).exp();
    MomentumSpaceState::from_fn(e_grid, p_grid, units, move |e, p| {
        let envelope = (g(e - s.e0 - separation) + g(e - s.e0 + separation))
            * (-(p - s.p0).powi(2) / (4.0 * s.sigma_p * s.sigma_p)).exp();
        Complex64::from_polar(envelope, (-e * s.tau0 + p * s.x0) / hbar)
    })
}
