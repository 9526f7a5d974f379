use super::metric::StaticMetric;
use super::point::ExtendedPhaseSpacePoint;
use super::system::ClockSystem;
use crate::error::{Error, Result};

/// Tolerance on `|phi1|, |phi2|` for initial data.
pub const SURFACE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<ExtendedPhaseSpacePoint>,
    pub dt: f64,
}

/// Largest excursions along a trajectory relative to its first point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Drift {
    pub phi1: f64,
    pub phi2: f64,
    /// `max |H - H(0)| / |H(0)|`.
    pub hamiltonian: f64,
    /// `max |M - M(0)| / |M(0)|`.
    pub mass: f64,
}

impl Drift {
    pub fn max(&self) -> f64 {
        self.phi1
            .max(self.phi2)
            .max(self.hamiltonian)
            .max(self.mass)
    }
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> &ExtendedPhaseSpacePoint {
        self.points
            .last()
            .expect("trajectory holds at least the initial point")
    }

    pub fn drift<M: StaticMetric + ?Sized>(&self, system: &ClockSystem<'_, M>) -> Result<Drift> {
        let first = &self.points[0];
        let h0 = system.total_hamiltonian(first)?;
        let mut d = Drift::default();
        for pt in &self.points {
            let c = pt.constraints();
            d.phi1 = d.phi1.max(c.phi1.abs());
            d.phi2 = d.phi2.max(c.phi2.abs());
            d.hamiltonian = d
                .hamiltonian
                .max((system.total_hamiltonian(pt)? - h0).abs() / h0.abs());
            d.mass = d.mass.max((pt.m - first.m).abs() / first.m.abs());
        }
        Ok(d)
    }

    pub const CSV_HEADER: [&'static str; 14] = [
        "t", "tau", "p_tau", "M", "p_M", "x1", "x2", "x3", "p1", "p2", "p3", "phi1", "phi2", "H",
    ];

    /// Rows in [`Self::CSV_HEADER`] order.
    pub fn csv_rows<M: StaticMetric + ?Sized>(
        &self,
        system: &ClockSystem<'_, M>,
    ) -> Result<Vec<Vec<f64>>> {
        self.times
            .iter()
            .zip(&self.points)
            .map(|(&t, pt)| {
                let c = pt.constraints();
                let mut row = Vec::with_capacity(14);
                row.push(t);
                row.extend_from_slice(&pt.to_array());
                row.extend([c.phi1, c.phi2, system.total_hamiltonian(pt)?]);
                Ok(row)
            })
            .collect()
    }
}

fn axpy(y: &[f64; 10], a: f64, k: &[f64; 10]) -> ExtendedPhaseSpacePoint {
    let mut out = *y;
    for i in 0..10 {
        out[i] += a * k[i];
    }
    ExtendedPhaseSpacePoint::from_array(&out)
}

/// Fixed-step classical RK4 in coordinate time. No projection back onto the
/// constraint surface is applied.
pub fn integrate<M: StaticMetric + ?Sized>(
    system: &ClockSystem<'_, M>,
    start: ExtendedPhaseSpacePoint,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(dt > 0.0 && t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("need dt > 0 and finite t_end >= 0 (dt = {dt}, t_end = {t_end})"),
        });
    }
    let c = start.constraints();
    let scale = start.m.abs().max(1.0);
    if c.phi1.abs() > SURFACE_TOLERANCE * scale || c.phi2.abs() > SURFACE_TOLERANCE * scale {
        return Err(Error::OffConstraintSurface {
            phi1: c.phi1,
            phi2: c.phi2,
        });
    }

    let steps = (t_end / dt).round() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    times.push(0.0);
    points.push(start);

    let mut y = start.to_array();
    for n in 1..=steps {
        let k1 = system
            .hamilton_rhs(&ExtendedPhaseSpacePoint::from_array(&y))?
            .to_array();
        let k2 = system.hamilton_rhs(&axpy(&y, 0.5 * dt, &k1))?.to_array();
        let k3 = system.hamilton_rhs(&axpy(&y, 0.5 * dt, &k2))?.to_array();
        let k4 = system.hamilton_rhs(&axpy(&y, dt, &k3))?.to_array();
        for i in 0..10 {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        times.push(n as f64 * dt);
        points.push(ExtendedPhaseSpacePoint::from_array(&y));
    }
    Ok(Trajectory { times, points, dt })
}
