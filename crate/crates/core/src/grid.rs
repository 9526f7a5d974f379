//! Uniform periodic grids and complex fields sampled on them.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `n` equally spaced nodes on the half-open interval `[min, max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    min: f64,
    max: f64,
    n: usize,
    step: f64,
}

impl UniformGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::GridConfig(format!(
                "node count {n} must be a power of two and at least 8"
            )));
        }
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(Error::GridConfig(format!("bad interval [{min}, {max})")));
        }
        Ok(Self {
            min,
            max,
            n,
            step: (max - min) / n as f64,
        })
    }

    /// Grid centred on `center` with half-width `half_width`.
    pub fn centered(center: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::new(center - half_width, center + half_width, n)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        self.min + k as f64 * self.step
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.node(k))
    }

    /// Index of the node nearest to `x`, if `x` lies inside the window.
    pub fn nearest(&self, x: f64) -> Option<usize> {
        let k = ((x - self.min) / self.step).round();
        (k >= 0.0 && (k as usize) < self.n).then_some(k as usize)
    }

    /// Angular wavenumbers of the DFT bins in FFT order; the Nyquist bin is
    /// reported as zero so odd derivatives stay real-to-real.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n;
        let scale = 2.0 * std::f64::consts::PI / (n as f64 * self.step);
        (0..n)
            .map(|k| {
                if k < n / 2 {
                    k as f64 * scale
                } else if k == n / 2 {
                    0.0
                } else {
                    (k as f64 - n as f64) * scale
                }
            })
            .collect()
    }
}

/// Field sampled on one uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField1D {
    pub grid: UniformGrid,
    pub values: Vec<Complex64>,
}

impl ComplexField1D {
    pub fn new(grid: UniformGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridConfig(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values }
    }

    pub fn boundary_ratio(&self) -> f64 {
        boundary_ratio_1d(&self.values)
    }
}

/// Field on a product grid, row-major: `values[r * cols.len() + c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField2D {
    pub rows: UniformGrid,
    pub cols: UniformGrid,
    pub values: Vec<Complex64>,
}

impl ComplexField2D {
    pub fn new(rows: UniformGrid, cols: UniformGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != rows.len() * cols.len() {
            return Err(Error::GridConfig(format!(
                "{} values for a {}x{} grid",
                values.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(Self { rows, cols, values })
    }

    pub fn from_fn(
        rows: UniformGrid,
        cols: UniformGrid,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Self {
        let mut values = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.nodes() {
            values.extend(cols.nodes().map(|c| f(r, c)));
        }
        Self { rows, cols, values }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.values[r * self.cols.len() + c]
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        let n = self.cols.len();
        &self.values[r * n..(r + 1) * n]
    }

    /// Same grids, new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        Self {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            values,
        }
    }

    /// Max boundary |value| / max |value| on the first/last rows.
    pub fn row_boundary_ratio(&self) -> f64 {
        let peak = max_abs(&self.values);
        if peak == 0.0 {
            return 0.0;
        }
        let last = self.rows.len() - 1;
        let edge = max_abs(self.row(0)).max(max_abs(self.row(last)));
        edge / peak
    }

    /// Max boundary |value| / max |value| on the first/last columns.
    pub fn col_boundary_ratio(&self) -> f64 {
        let peak = max_abs(&self.values);
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.cols.len();
        let edge = (0..self.rows.len())
            .map(|r| self.at(r, 0).norm().max(self.at(r, n - 1).norm()))
            .fold(0.0, f64::max);
        edge / peak
    }

    pub fn boundary_ratio(&self) -> f64 {
        self.row_boundary_ratio().max(self.col_boundary_ratio())
    }
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn boundary_ratio_1d(v: &[Complex64]) -> f64 {
    let peak = max_abs(v);
    if peak == 0.0 {
        return 0.0;
    }
    v[0].norm().max(v[v.len() - 1].norm()) / peak
}

/// Something with a grid-quadrature measure.
pub trait Sampled {
    fn values(&self) -> &[Complex64];
    /// Product of the grid steps.
    fn cell_volume(&self) -> f64;
}

impl Sampled for ComplexField1D {
    fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn cell_volume(&self) -> f64 {
        self.grid.step()
    }
}

impl Sampled for ComplexField2D {
    fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn cell_volume(&self) -> f64 {
        self.rows.step() * self.cols.step()
    }
}

/// `sum |psi|^2` times the cell volume.
pub fn trapezoid_norm_squared<F: Sampled + ?Sized>(field: &F) -> f64 {
    field.values().iter().map(|z| z.norm_sqr()).sum::<f64>() * field.cell_volume()
}

/// Grid-quadrature inner product `<a|b>`.
pub fn inner_product(a: &[Complex64], b: &[Complex64], cell_volume: f64) -> Complex64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        * cell_volume
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_sizes() {
        assert!(UniformGrid::new(0.0, 1.0, 12).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 4).is_err());
        assert!(UniformGrid::new(1.0, 0.0, 8).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 8).is_ok());
    }

    #[test]
    fn nodes_tile_the_interval() {
        let g = UniformGrid::new(-3.0, 5.0, 64).unwrap();
        let last = g.node(63);
        assert!((last + g.step() - g.max()).abs() <= 64.0 * f64::EPSILON * 5.0);
        assert_eq!(g.nodes().len(), 64);
        assert_eq!(g.node(0), -3.0);
    }

    #[test]
    fn constant_field_norm() {
        let g = UniformGrid::new(0.0, 1.0, 8).unwrap();
        let f = ComplexField1D::from_fn(g, |_| Complex64::new(1.0, 0.0));
        assert_eq!(trapezoid_norm_squared(&f), 1.0);
    }

    #[test]
    fn zero_field_norm() {
        let g = UniformGrid::new(0.0, 1.0, 8).unwrap();
        let f = ComplexField1D::from_fn(g, |_| Complex64::default());
        assert_eq!(trapezoid_norm_squared(&f), 0.0);
    }

    #[test]
    fn normalized_gaussian_norm() {
        // |psi|^2 is the unit normal density
        let g = UniformGrid::new(-16.0, 16.0, 1024).unwrap();
        let norm = (2.0 * PI).powf(-0.25);
        let f = ComplexField1D::from_fn(g, |x| Complex64::new(norm * (-x * x / 4.0).exp(), 0.0));
        assert!((trapezoid_norm_squared(&f) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_ratios() {
        let rows = UniformGrid::new(-1.0, 1.0, 8).unwrap();
        let cols = UniformGrid::new(-1.0, 1.0, 8).unwrap();
        let f = ComplexField2D::from_fn(rows, cols, |r, c| Complex64::new(1.0 + r + 2.0 * c, 0.0));
        assert!(f.boundary_ratio() > 0.99);
        assert_eq!(f.values.len(), 64);
    }
}
