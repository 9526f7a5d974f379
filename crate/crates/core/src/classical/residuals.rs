//! Trajectory-level consistency checks computed from finite differences of
//! the stored path, independent of the Hamiltonian that produced it.

use nalgebra::{Matrix4, Vector4};

use super::integrate::Trajectory;
use super::metric::{StaticMetric, Vec3};
use super::system::ClockSystem;
use crate::error::{Error, Result};

/// `max |dtau/dt - sqrt(f^2 - g_ij xdot^i xdot^j / c^2)|` over interior steps.
pub fn proper_time_residual<M: StaticMetric + ?Sized>(
    traj: &Trajectory,
    system: &ClockSystem<'_, M>,
) -> Result<f64> {
    let dt = traj.dt;
    let c2 = system.c * system.c;
    let mut worst: f64 = 0.0;
    for k in 1..traj.len().saturating_sub(1) {
        let (prev, here, next) = (&traj.points[k - 1], &traj.points[k], &traj.points[k + 1]);
        let tau_dot = (next.tau - prev.tau) / (2.0 * dt);
        let v = (next.position() - prev.position()) / (2.0 * dt);
        let x = here.position();
        let f = system.metric.lapse(&x)?;
        let g = system.metric.spatial(&x)?;
        let rate = (f * f - v.dot(&(g * v)) / c2).sqrt();
        worst = worst.max((tau_dot - rate).abs());
    }
    Ok(worst)
}

/// Spacetime metric `diag(-f^2, g_ij)` and its derivatives `d_sigma g_{mu nu}`
/// (with `d_0 = 0` for static fields).
fn spacetime_metric<M: StaticMetric + ?Sized>(
    metric: &M,
    x: &Vec3,
) -> Result<(Matrix4<f64>, [Matrix4<f64>; 4])> {
    let f = metric.lapse(x)?;
    let g = metric.spatial(x)?;
    let df = metric.lapse_gradient(x)?;
    let dg = metric.spatial_gradient(x)?;
    let mut g4 = Matrix4::zeros();
    g4[(0, 0)] = -f * f;
    let mut d4 = [Matrix4::zeros(); 4];
    for i in 0..3 {
        for j in 0..3 {
            g4[(i + 1, j + 1)] = g[(i, j)];
        }
    }
    for k in 0..3 {
        let d = &mut d4[k + 1];
        d[(0, 0)] = -2.0 * f * df[k];
        for i in 0..3 {
            for j in 0..3 {
                d[(i + 1, j + 1)] = dg[k][(i, j)];
            }
        }
    }
    Ok((g4, d4))
}

/// `Gamma^rho_{mu nu} = 1/2 g^{rho sigma} (-g_{mu nu,sigma} + g_{nu sigma,mu} + g_{sigma mu,nu})`.
fn christoffel(ginv: &Matrix4<f64>, d: &[Matrix4<f64>; 4]) -> [[[f64; 4]; 4]; 4] {
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for (rho, g_rho) in gamma.iter_mut().enumerate() {
        for mu in 0..4 {
            for nu in 0..4 {
                g_rho[mu][nu] = 0.5
                    * (0..4)
                        .map(|s| {
                            ginv[(rho, s)] * (-d[s][(mu, nu)] + d[mu][(nu, s)] + d[nu][(s, mu)])
                        })
                        .sum::<f64>();
            }
        }
    }
    gamma
}

/// `f_{mu nu} = A_{nu,mu} - A_{mu,nu}` with `A = (A_0, A_i)`.
fn field_tensor<M: StaticMetric + ?Sized>(metric: &M, x: &Vec3) -> Matrix4<f64> {
    let da0 = metric.a0_gradient(x);
    let da = metric.a_spatial_jacobian(x);
    // dA[(mu, nu)] = d_mu A_nu
    let mut d_a = Matrix4::zeros();
    for k in 0..3 {
        d_a[(k + 1, 0)] = da0[k];
        for i in 0..3 {
            d_a[(k + 1, i + 1)] = da[(k, i)];
        }
    }
    d_a - d_a.transpose()
}

/// Largest Euclidean norm over interior steps of
/// `(M/c^2)(xddot^rho + Gamma^rho_{mu nu} xdot^mu xdot^nu) - e f^{rho mu} xdot_mu`,
/// with dots meaning d/dtau and `x^0 = c t`.
pub fn geodesic_lorentz_residual<M: StaticMetric + ?Sized>(
    traj: &Trajectory,
    system: &ClockSystem<'_, M>,
) -> Result<f64> {
    for k in 1..traj.len() {
        if !(traj.points[k].tau > traj.points[k - 1].tau) {
            return Err(Error::NonMonotoneProperTime(k));
        }
    }
    let dt = traj.dt;
    let c = system.c;
    let mut worst: f64 = 0.0;
    for k in 1..traj.len().saturating_sub(1) {
        let (prev, here, next) = (&traj.points[k - 1], &traj.points[k], &traj.points[k + 1]);
        let x = here.position();

        // derivatives in coordinate time
        let tau1 = (next.tau - prev.tau) / (2.0 * dt);
        let tau2 = (next.tau - 2.0 * here.tau + prev.tau) / (dt * dt);
        let v = (next.position() - prev.position()) / (2.0 * dt);
        let a = (next.position() - here.position() * 2.0 + prev.position()) / (dt * dt);
        let d1 = Vector4::new(c, v[0], v[1], v[2]);
        let d2 = Vector4::new(0.0, a[0], a[1], a[2]);

        // chain rule to proper time
        let u = d1 / tau1;
        let acc = (d2 * tau1 - d1 * tau2) / (tau1 * tau1 * tau1);

        let (g4, dg4) = spacetime_metric(system.metric, &x)?;
        let ginv = g4
            .try_inverse()
            .ok_or(Error::SingularMetric([x[0], x[1], x[2]]))?;
        let gamma = christoffel(&ginv, &dg4);
        let lorentz = ginv * field_tensor(system.metric, &x) * u * system.charge;

        let mass = here.m / (c * c);
        let mut r = Vector4::zeros();
        for rho in 0..4 {
            let mut conn = 0.0;
            for mu in 0..4 {
                for nu in 0..4 {
                    conn += gamma[rho][mu][nu] * u[mu] * u[nu];
                }
            }
            r[rho] = mass * (acc[rho] + conn) - lorentz[rho];
        }
        worst = worst.max(r.norm());
    }
    Ok(worst)
}
