//! Static backgrounds: lapse `f` (with `g_00 = -f^2`), spatial metric `g_ij`
//! and the potentials `A_0`, `A_i`, all functions of the spatial position only.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Relative step of the default central-difference gradients.
const FD_STEP: f64 = 1e-5;

fn fd_step(x: f64) -> f64 {
    FD_STEP * x.abs().max(1.0)
}

/// A static gravitational plus electromagnetic background.
///
/// Only the field values are required; gradients fall back to central
/// differences and may be overridden with exact expressions.
pub trait StaticMetric: Send + Sync {
    fn lapse(&self, x: &Vec3) -> Result<f64>;
    fn spatial(&self, x: &Vec3) -> Result<Mat3>;

    fn a0(&self, _x: &Vec3) -> f64 {
        0.0
    }

    fn a_spatial(&self, _x: &Vec3) -> Vec3 {
        Vec3::zeros()
    }

    fn lapse_gradient(&self, x: &Vec3) -> Result<Vec3> {
        let mut g = Vec3::zeros();
        for k in 0..3 {
            let (xp, xm, h) = shifted(x, k);
            g[k] = (self.lapse(&xp)? - self.lapse(&xm)?) / (2.0 * h);
        }
        Ok(g)
    }

    /// `[d_1 g_ij, d_2 g_ij, d_3 g_ij]`.
    fn spatial_gradient(&self, x: &Vec3) -> Result<[Mat3; 3]> {
        let mut out = [Mat3::zeros(); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let (xp, xm, h) = shifted(x, k);
            *slot = (self.spatial(&xp)? - self.spatial(&xm)?) / (2.0 * h);
        }
        Ok(out)
    }

    fn a0_gradient(&self, x: &Vec3) -> Vec3 {
        let mut g = Vec3::zeros();
        for k in 0..3 {
            let (xp, xm, h) = shifted(x, k);
            g[k] = (self.a0(&xp) - self.a0(&xm)) / (2.0 * h);
        }
        g
    }

    /// `J[(k, i)] = d_k A_i`.
    fn a_spatial_jacobian(&self, x: &Vec3) -> Mat3 {
        let mut j = Mat3::zeros();
        for k in 0..3 {
            let (xp, xm, h) = shifted(x, k);
            let d = (self.a_spatial(&xp) - self.a_spatial(&xm)) / (2.0 * h);
            for i in 0..3 {
                j[(k, i)] = d[i];
            }
        }
        j
    }

    /// Inverse spatial metric, checking positive definiteness.
    fn spatial_inverse(&self, x: &Vec3) -> Result<Mat3> {
        let g = self.spatial(x)?;
        let singular = || Error::SingularMetric([x[0], x[1], x[2]]);
        let chol = g.cholesky().ok_or_else(singular)?;
        Ok(chol.inverse())
    }
}

fn shifted(x: &Vec3, k: usize) -> (Vec3, Vec3, f64) {
    let h = fd_step(x[k]);
    let mut xp = *x;
    let mut xm = *x;
    xp[k] += h;
    xm[k] -= h;
    (xp, xm, h)
}

/// Gravitational part of a [`StaticField`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gravity {
    Flat,
    /// `f = 1 + g x^1 / c^2`, flat spatial metric.
    UniformLapse {
        g: f64,
    },
    /// Weak field of a point mass: `f = 1 - GM/(c^2 r)`,
    /// `g_ij = (1 + 2 GM/(c^2 r)) delta_ij`.
    Isotropic {
        gm: f64,
    },
}

/// Electromagnetic part of a [`StaticField`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Electromagnetic {
    None,
    /// Uniform electric field `E`; `A_0 = E . x / c`, so the force on a
    /// charge is `e E`.
    Electric {
        field: [f64; 3],
    },
    /// Uniform magnetic field `B` along x^3 in symmetric gauge.
    Magnetic {
        b: f64,
    },
}

/// Closed-form static background with exact gradients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticField {
    pub gravity: Gravity,
    pub em: Electromagnetic,
    pub c: f64,
}

impl StaticField {
    pub fn flat(c: f64) -> Self {
        Self {
            gravity: Gravity::Flat,
            em: Electromagnetic::None,
            c,
        }
    }

    pub fn uniform_lapse(g: f64, c: f64) -> Self {
        Self {
            gravity: Gravity::UniformLapse { g },
            em: Electromagnetic::None,
            c,
        }
    }

    pub fn isotropic(gm: f64, c: f64) -> Self {
        Self {
            gravity: Gravity::Isotropic { gm },
            em: Electromagnetic::None,
            c,
        }
    }

    pub fn with_em(mut self, em: Electromagnetic) -> Self {
        self.em = em;
        self
    }

    fn radius(&self, x: &Vec3, gm: f64) -> Result<f64> {
        let r = x.norm();
        // keep well clear of f = 0
        if r <= 2.0 * gm / (self.c * self.c) {
            return Err(Error::OutsideDomain([x[0], x[1], x[2]]));
        }
        Ok(r)
    }
}

impl StaticMetric for StaticField {
    fn lapse(&self, x: &Vec3) -> Result<f64> {
        let c2 = self.c * self.c;
        let f = match self.gravity {
            Gravity::Flat => 1.0,
            Gravity::UniformLapse { g } => 1.0 + g * x[0] / c2,
            Gravity::Isotropic { gm } => 1.0 - gm / (c2 * self.radius(x, gm)?),
        };
        if f <= 0.0 {
            return Err(Error::OutsideDomain([x[0], x[1], x[2]]));
        }
        Ok(f)
    }

    fn spatial(&self, x: &Vec3) -> Result<Mat3> {
        Ok(match self.gravity {
            Gravity::Flat | Gravity::UniformLapse { .. } => Mat3::identity(),
            Gravity::Isotropic { gm } => {
                let r = self.radius(x, gm)?;
                Mat3::identity() * (1.0 + 2.0 * gm / (self.c * self.c * r))
            }
        })
    }

    fn a0(&self, x: &Vec3) -> f64 {
        match self.em {
            Electromagnetic::Electric { field } => Vec3::from(field).dot(x) / self.c,
            _ => 0.0,
        }
    }

    fn a_spatial(&self, x: &Vec3) -> Vec3 {
        match self.em {
            Electromagnetic::Magnetic { b } => Vec3::new(-0.5 * b * x[1], 0.5 * b * x[0], 0.0),
            _ => Vec3::zeros(),
        }
    }

    fn lapse_gradient(&self, x: &Vec3) -> Result<Vec3> {
        let c2 = self.c * self.c;
        Ok(match self.gravity {
            Gravity::Flat => Vec3::zeros(),
            Gravity::UniformLapse { g } => Vec3::new(g / c2, 0.0, 0.0),
            Gravity::Isotropic { gm } => {
                let r = self.radius(x, gm)?;
                x * (gm / (c2 * r * r * r))
            }
        })
    }

    fn spatial_gradient(&self, x: &Vec3) -> Result<[Mat3; 3]> {
        Ok(match self.gravity {
            Gravity::Flat | Gravity::UniformLapse { .. } => [Mat3::zeros(); 3],
            Gravity::Isotropic { gm } => {
                let r = self.radius(x, gm)?;
                let s = -2.0 * gm / (self.c * self.c * r * r * r);
                [0, 1, 2].map(|k| Mat3::identity() * (s * x[k]))
            }
        })
    }

    fn a0_gradient(&self, _x: &Vec3) -> Vec3 {
        match self.em {
            Electromagnetic::Electric { field } => Vec3::from(field) / self.c,
            _ => Vec3::zeros(),
        }
    }

    fn a_spatial_jacobian(&self, _x: &Vec3) -> Mat3 {
        match self.em {
            Electromagnetic::Magnetic { b } => {
                let mut j = Mat3::zeros();
                // d_2 A_1 = -b/2, d_1 A_2 = b/2
                j[(1, 0)] = -0.5 * b;
                j[(0, 1)] = 0.5 * b;
                j
            }
            _ => Mat3::zeros(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Same field, but only the required methods: gradients by differences.
    struct Sampled(StaticField);

    impl StaticMetric for Sampled {
        fn lapse(&self, x: &Vec3) -> Result<f64> {
            self.0.lapse(x)
        }
        fn spatial(&self, x: &Vec3) -> Result<Mat3> {
            self.0.spatial(x)
        }
        fn a0(&self, x: &Vec3) -> f64 {
            self.0.a0(x)
        }
        fn a_spatial(&self, x: &Vec3) -> Vec3 {
            self.0.a_spatial(x)
        }
    }

    #[test]
    fn exact_gradients_match_differences() {
        let fields = [
            StaticField::isotropic(0.3, 1.0).with_em(Electromagnetic::Magnetic { b: 0.7 }),
            StaticField::uniform_lapse(0.2, 1.0).with_em(Electromagnetic::Electric {
                field: [0.1, -0.4, 0.3],
            }),
        ];
        let x = Vec3::new(1.5, -2.0, 0.7);
        for field in fields {
            let fd = Sampled(field);
            assert!(
                (field.lapse_gradient(&x).unwrap() - fd.lapse_gradient(&x).unwrap()).norm() < 1e-9
            );
            let (a, b) = (
                field.spatial_gradient(&x).unwrap(),
                fd.spatial_gradient(&x).unwrap(),
            );
            for k in 0..3 {
                assert!((a[k] - b[k]).norm() < 1e-9);
            }
            assert!((field.a0_gradient(&x) - fd.a0_gradient(&x)).norm() < 1e-9);
            assert!((field.a_spatial_jacobian(&x) - fd.a_spatial_jacobian(&x)).norm() < 1e-9);
        }
    }

    #[test]
    fn isotropic_domain_guard() {
        let field = StaticField::isotropic(1.0, 1.0);
        assert!(field.lapse(&Vec3::new(0.5, 0.0, 0.0)).is_err());
        assert!(field.lapse(&Vec3::new(10.0, 0.0, 0.0)).unwrap() > 0.0);
    }

    #[test]
    fn singular_metric_detected() {
        struct Degenerate;
        impl StaticMetric for Degenerate {
            fn lapse(&self, _: &Vec3) -> Result<f64> {
                Ok(1.0)
            }
            fn spatial(&self, _: &Vec3) -> Result<Mat3> {
                Ok(Mat3::from_diagonal(&Vec3::new(1.0, 0.0, 1.0)))
            }
        }
        assert!(matches!(
            Degenerate.spatial_inverse(&Vec3::zeros()),
            Err(Error::SingularMetric(_))
        ));
    }
}
