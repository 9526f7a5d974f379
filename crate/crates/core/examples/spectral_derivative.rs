//! Spectral differentiation on a periodic grid, and what happens when the
//! sampled function is not band-limited.

use clocklab::spectral::spectral_derivative;
use clocklab::{ComplexField1D, UniformGrid};
use num_complex::Complex64;

fn main() -> clocklab::Result<()> {
    println!("Gaussian exp(-x^2/2), window [-L, L), 256 nodes");
    println!("     L   boundary ratio   max |f' - exact|");
    for half in [4.0, 6.0, 8.0, 10.0] {
        let grid = UniformGrid::centered(0.0, half, 256)?;
        let f = ComplexField1D::from_fn(grid, |x| Complex64::new((-x * x / 2.0).exp(), 0.0));
        let d = spectral_derivative(&f)?;
        let err = f
            .grid
            .nodes()
            .zip(&d.values)
            .map(|(x, v)| (v - Complex64::new(-x * (-x * x / 2.0).exp(), 0.0)).norm())
            .fold(0.0, f64::max);
        println!("{half:>6} {:>16.2e} {err:>18.2e}", f.boundary_ratio());
    }
    Ok(())
}
