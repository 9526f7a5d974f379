//! DFT-based differentiation on periodic uniform grids.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{ComplexField1D, ComplexField2D, UniformGrid};

/// Boundary amplitude ratio above which a field is not treated as band-limited.
pub const BAND_LIMIT_RATIO: f64 = 1e-10;

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    multiplier: Vec<Complex64>,
}

impl Plans {
    fn new(grid: &UniformGrid) -> Result<Self> {
        if !grid.len().is_power_of_two() {
            return Err(Error::GridConfig(format!(
                "{} nodes is not a power of two",
                grid.len()
            )));
        }
        let mut planner = FftPlanner::new();
        let n = grid.len();
        let scale = 1.0 / n as f64;
        Ok(Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            multiplier: grid
                .wavenumbers()
                .into_iter()
                .map(|k| Complex64::new(0.0, k * scale))
                .collect(),
        })
    }

    fn differentiate(&self, line: &mut [Complex64]) {
        self.forward.process(line);
        for (z, m) in line.iter_mut().zip(&self.multiplier) {
            *z *= m;
        }
        self.inverse.process(line);
    }
}

fn warn_if_not_band_limited(ratio: f64, what: &str) {
    if ratio >= BAND_LIMIT_RATIO {
        log::warn!("{what}: boundary amplitude ratio {ratio:e} >= {BAND_LIMIT_RATIO:e}; derivative may alias");
    }
}

/// d/dx of a periodic field by multiplication with `i k` in Fourier space.
pub fn spectral_derivative(field: &ComplexField1D) -> Result<ComplexField1D> {
    let plans = Plans::new(&field.grid)?;
    warn_if_not_band_limited(field.boundary_ratio(), "spectral_derivative");
    let mut values = field.values.clone();
    plans.differentiate(&mut values);
    Ok(ComplexField1D {
        grid: field.grid.clone(),
        values,
    })
}

/// Derivative along the column (fast) axis of a 2D field, row by row.
pub fn spectral_derivative_cols(field: &ComplexField2D) -> Result<Vec<Complex64>> {
    let plans = Plans::new(&field.cols)?;
    let mut values = field.values.clone();
    values
        .par_chunks_mut(field.cols.len())
        .for_each(|row| plans.differentiate(row));
    Ok(values)
}

/// Unitary-normalized forward DFT.
pub fn dft_forward(values: &[Complex64]) -> Vec<Complex64> {
    let mut out = values.to_vec();
    FftPlanner::new()
        .plan_fft_forward(out.len())
        .process(&mut out);
    let s = 1.0 / (out.len() as f64).sqrt();
    out.iter_mut().for_each(|z| *z *= s);
    out
}

/// Inverse of [`dft_forward`].
pub fn dft_inverse(values: &[Complex64]) -> Vec<Complex64> {
    let mut out = values.to_vec();
    FftPlanner::new()
        .plan_fft_inverse(out.len())
        .process(&mut out);
    let s = 1.0 / (out.len() as f64).sqrt();
    out.iter_mut().for_each(|z| *z *= s);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::trapezoid_norm_squared;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn sup_err(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn single_mode() {
        let g = UniformGrid::new(0.0, 1.0, 64).unwrap();
        let f = ComplexField1D::from_fn(g, |x| Complex64::from_polar(1.0, 2.0 * PI * x));
        let d = spectral_derivative(&f).unwrap();
        let want: Vec<_> = f
            .values
            .iter()
            .map(|z| Complex64::i() * 2.0 * PI * z)
            .collect();
        assert!(sup_err(&d.values, &want) < 1e-12);
    }

    #[test]
    fn constant_has_zero_derivative() {
        let g = UniformGrid::new(0.0, 1.0, 16).unwrap();
        let f = ComplexField1D::from_fn(g, |_| Complex64::new(3.0, -1.0));
        let d = spectral_derivative(&f).unwrap();
        assert!(d.values.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn gaussian_against_analytic_derivative() {
        let g = UniformGrid::new(-16.0, 16.0, 1024).unwrap();
        let f = ComplexField1D::from_fn(g.clone(), |x| Complex64::new((-x * x / 2.0).exp(), 0.0));
        let d = spectral_derivative(&f).unwrap();
        let want: Vec<_> = g
            .nodes()
            .map(|x| Complex64::new(-x * (-x * x / 2.0).exp(), 0.0))
            .collect();
        assert!(sup_err(&d.values, &want) < 1e-10);
    }

    #[test]
    fn parseval() {
        let g = UniformGrid::new(-8.0, 8.0, 256).unwrap();
        let f = ComplexField1D::from_fn(g.clone(), |x| {
            Complex64::new((-x * x).exp(), x.sin() * (-x * x).exp())
        });
        let spec = dft_forward(&f.values);
        let back = dft_inverse(&spec);
        let n0 = trapezoid_norm_squared(&f);
        let n1: f64 = spec.iter().map(|z| z.norm_sqr()).sum::<f64>() * g.step();
        assert!((n0 - n1).abs() <= 1e-12 * n0);
        assert!(sup_err(&back, &f.values) < 1e-14);
    }

    proptest! {
        #[test]
        fn derivative_is_linear(
            a in -3.0f64..3.0, b in -3.0f64..3.0,
            c1 in proptest::collection::vec(-1.0f64..1.0, 6),
            c2 in proptest::collection::vec(-1.0f64..1.0, 6),
        ) {
            let g = UniformGrid::new(0.0, 1.0, 64).unwrap();
            let trig = |c: &Vec<f64>| {
                let c = c.clone();
                move |x: f64| (0..3).map(|m| Complex64::new(c[2*m], c[2*m+1]) * Complex64::from_polar(1.0, 2.0*PI*(m as f64 + 1.0)*x)).sum::<Complex64>()
            };
            let f = ComplexField1D::from_fn(g.clone(), trig(&c1));
            let h = ComplexField1D::from_fn(g.clone(), trig(&c2));
            let mix = ComplexField1D::new(g, f.values.iter().zip(&h.values).map(|(x, y)| x * a + y * b).collect()).unwrap();
            let df = spectral_derivative(&f).unwrap();
            let dh = spectral_derivative(&h).unwrap();
            let dm = spectral_derivative(&mix).unwrap();
            let want: Vec<_> = df.values.iter().zip(&dh.values).map(|(x, y)| x * a + y * b).collect();
            let scale = want.iter().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(sup_err(&dm.values, &want) <= 1e-12 * scale);
        }
    }
}
