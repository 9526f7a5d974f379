//! The clock Hamiltonian with the multipliers fixed by constraint consistency:
//!
//! `H = f S - c e A_0 - f M (M - p_tau) / S`,
//! `S = sqrt(M^2 + c^2 g^ij (p_i - e A_i)(p_j - e A_j))`.

use super::metric::{Mat3, StaticMetric, Vec3};
use super::point::ExtendedPhaseSpacePoint;
use crate::error::{Error, Result};

/// A charged clock in a static background.
#[derive(Debug, Clone, Copy)]
pub struct ClockSystem<'a, M: StaticMetric + ?Sized> {
    pub metric: &'a M,
    pub charge: f64,
    pub c: f64,
}

/// Field quantities at one point, shared by H and its derivatives.
struct Local {
    f: f64,
    ginv: Mat3,
    /// Kinetic momentum `p - e A`.
    pi: Vec3,
    s: f64,
}

impl<'a, M: StaticMetric + ?Sized> ClockSystem<'a, M> {
    pub fn new(metric: &'a M, charge: f64, c: f64) -> Self {
        Self { metric, charge, c }
    }

    fn local(&self, pt: &ExtendedPhaseSpacePoint) -> Result<Local> {
        let x = pt.position();
        let f = self.metric.lapse(&x)?;
        let ginv = self.metric.spatial_inverse(&x)?;
        let pi = pt.momentum() - self.metric.a_spatial(&x) * self.charge;
        let s2 = pt.m * pt.m + self.c * self.c * pi.dot(&(ginv * pi));
        if !(s2 > 0.0) {
            return Err(Error::DegeneratePoint(s2));
        }
        Ok(Local {
            f,
            ginv,
            pi,
            s: s2.sqrt(),
        })
    }

    /// `H_0 = f S - c e A_0`.
    pub fn base_hamiltonian(&self, pt: &ExtendedPhaseSpacePoint) -> Result<f64> {
        let l = self.local(pt)?;
        Ok(l.f * l.s - self.c * self.charge * self.metric.a0(&pt.position()))
    }

    pub fn total_hamiltonian(&self, pt: &ExtendedPhaseSpacePoint) -> Result<f64> {
        let l = self.local(pt)?;
        let phi1 = pt.m - pt.p_tau;
        Ok(l.f * l.s
            - self.c * self.charge * self.metric.a0(&pt.position())
            - l.f * pt.m * phi1 / l.s)
    }

    /// Rate at which the clock ticks, `f M / S`.
    pub fn proper_time_rate(&self, pt: &ExtendedPhaseSpacePoint) -> Result<f64> {
        let l = self.local(pt)?;
        Ok(l.f * pt.m / l.s)
    }

    /// Hamilton's equations from exact partial derivatives of the total H.
    pub fn hamilton_rhs(&self, pt: &ExtendedPhaseSpacePoint) -> Result<ExtendedPhaseSpacePoint> {
        let x = pt.position();
        let l = self.local(pt)?;
        let (e, c2) = (self.charge, self.c * self.c);
        let m = pt.m;
        let phi1 = m - pt.p_tau;
        let s = l.s;

        let gpi = l.ginv * l.pi;
        let boost = 1.0 + m * phi1 / (s * s);
        let xdot = gpi * (l.f * c2 / s * boost);

        let df = self.metric.lapse_gradient(&x)?;
        let dg = self.metric.spatial_gradient(&x)?;
        let da0 = self.metric.a0_gradient(&x);
        let da = self.metric.a_spatial_jacobian(&x);
        let mut pdot = Vec3::zeros();
        for k in 0..3 {
            // d_k g^ij = -(g^-1 d_k g g^-1)^ij
            let dginv = -(l.ginv * dg[k] * l.ginv);
            let dak = Vec3::new(da[(k, 0)], da[(k, 1)], da[(k, 2)]);
            let ds = c2 / (2.0 * s) * (l.pi.dot(&(dginv * l.pi)) - 2.0 * e * gpi.dot(&dak));
            let dh = df[k] * (s - m * phi1 / s) + l.f * ds * boost - self.c * e * da0[k];
            pdot[k] = -dh;
        }

        Ok(ExtendedPhaseSpacePoint {
            tau: l.f * m / s,
            p_tau: 0.0,
            m: 0.0,
            p_m: -l.f * phi1 * (m * m / (s * s * s) - 1.0 / s),
            x: xdot.into(),
            p: pdot.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::metric::{Electromagnetic, StaticField};

    fn flat() -> StaticField {
        StaticField::flat(1.0)
    }

    #[test]
    fn base_hamiltonian_examples() {
        let f = flat();
        let sys = ClockSystem::new(&f, 0.0, 1.0);
        let rest = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [0.0; 3], [0.0; 3]);
        assert_eq!(sys.base_hamiltonian(&rest).unwrap(), 1.0);
        let moving = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [0.0; 3], [0.75, 0.0, 0.0]);
        assert!((sys.base_hamiltonian(&moving).unwrap() - 1.25).abs() < 1e-15);

        // A_0 = 2 at the origin: E field (2, 0, 0) evaluated at x = (1, 0, 0)
        let charged = StaticField::flat(1.0).with_em(Electromagnetic::Electric {
            field: [2.0, 0.0, 0.0],
        });
        let sys = ClockSystem::new(&charged, 1.0, 1.0);
        let pt = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [1.0, 0.0, 0.0], [0.0; 3]);
        assert!((sys.base_hamiltonian(&pt).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn total_hamiltonian_examples() {
        let f = flat();
        let sys = ClockSystem::new(&f, 0.0, 1.0);
        let off = ExtendedPhaseSpacePoint {
            m: 1.0,
            ..Default::default()
        };
        assert_eq!(sys.total_hamiltonian(&off).unwrap(), 0.0);
        let on = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [0.0; 3], [0.75, 0.0, 0.0]);
        assert!((sys.total_hamiltonian(&on).unwrap() - 1.25).abs() < 1e-15);
        assert_eq!(
            sys.total_hamiltonian(&on).unwrap(),
            sys.base_hamiltonian(&on).unwrap()
        );
    }

    #[test]
    fn degenerate_point() {
        let f = flat();
        let sys = ClockSystem::new(&f, 0.0, 1.0);
        assert!(matches!(
            sys.total_hamiltonian(&ExtendedPhaseSpacePoint::default()),
            Err(Error::DegeneratePoint(_))
        ));
    }

    #[test]
    fn rates_on_surface() {
        let f = flat();
        let sys = ClockSystem::new(&f, 0.0, 1.0);
        let rest = sys
            .hamilton_rhs(&ExtendedPhaseSpacePoint::on_surface(
                0.0, 1.0, [0.0; 3], [0.0; 3],
            ))
            .unwrap();
        assert_eq!(rest.tau, 1.0);
        assert_eq!(rest.to_array()[1..], [0.0; 9]);

        let moving = sys
            .hamilton_rhs(&ExtendedPhaseSpacePoint::on_surface(
                0.0,
                1.0,
                [0.0; 3],
                [0.75, 0.0, 0.0],
            ))
            .unwrap();
        assert!((moving.tau - 0.8).abs() < 1e-15);
        assert!((moving.x[0] - 0.6).abs() < 1e-15);
        assert!(moving.p_m.abs() < 1e-12);
    }

    /// Oracle: central differences of the total Hamiltonian.
    fn numeric_rhs<M: StaticMetric>(
        sys: &ClockSystem<'_, M>,
        pt: &ExtendedPhaseSpacePoint,
    ) -> [f64; 10] {
        let a = pt.to_array();
        let mut grad = [0.0; 10];
        for i in 0..10 {
            let h = 1e-6 * a[i].abs().max(1.0);
            let (mut ap, mut am) = (a, a);
            ap[i] += h;
            am[i] -= h;
            let hp = sys
                .total_hamiltonian(&ExtendedPhaseSpacePoint::from_array(&ap))
                .unwrap();
            let hm = sys
                .total_hamiltonian(&ExtendedPhaseSpacePoint::from_array(&am))
                .unwrap();
            grad[i] = (hp - hm) / (2.0 * h);
        }
        let mut out = [0.0; 10];
        for (q, p) in super::super::point::CANONICAL_PAIRS {
            out[q] = grad[p];
            out[p] = -grad[q];
        }
        out
    }

    #[test]
    fn analytic_rhs_matches_differences_off_surface() {
        let fields = [
            StaticField::isotropic(0.4, 1.3).with_em(Electromagnetic::Magnetic { b: 0.6 }),
            StaticField::uniform_lapse(0.3, 1.3).with_em(Electromagnetic::Electric {
                field: [0.2, 0.1, -0.3],
            }),
        ];
        let pt = ExtendedPhaseSpacePoint {
            tau: 0.3,
            p_tau: 1.7,
            m: 2.1,
            p_m: 0.4,
            x: [2.0, -1.0, 1.5],
            p: [0.3, -0.8, 0.5],
        };
        for field in &fields {
            let sys = ClockSystem::new(field, 0.7, 1.3);
            let exact = sys.hamilton_rhs(&pt).unwrap().to_array();
            let numeric = numeric_rhs(&sys, &pt);
            for i in 0..10 {
                assert!(
                    (exact[i] - numeric[i]).abs() < 1e-7,
                    "component {i}: {} vs {}",
                    exact[i],
                    numeric[i]
                );
            }
        }
    }
}
