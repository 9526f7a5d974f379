//! Physical constants and the two supported unit systems.
//!
//! `Natural` units set hbar = c = 1 and keep the second as the base unit, so
//! energies, masses and momenta are all angular frequencies (s^-1) and lengths
//! are light-seconds.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// CODATA 2018 reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light, m/s (exact).
pub const C_SI: f64 = 299_792_458.0;
/// Standard gravity, m/s^2.
pub const G_STANDARD: f64 = 9.806_65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitSystem {
    Si,
    Natural,
}

impl FromStr for UnitSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SI" => Ok(Self::Si),
            "NATURAL" => Ok(Self::Natural),
            other => Err(Error::InvalidParameter {
                name: "units",
                reason: format!("unknown unit system `{other}`"),
            }),
        }
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Si => "SI",
            Self::Natural => "NATURAL",
        })
    }
}

/// Constants in force for a computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitContext {
    pub hbar: f64,
    pub h: f64,
    pub c: f64,
    /// Local gravitational acceleration, expressed in this system.
    pub g: f64,
    pub system: UnitSystem,
}

impl UnitContext {
    pub fn si() -> Self {
        Self::si_with_gravity(G_STANDARD)
    }

    pub fn si_with_gravity(g: f64) -> Self {
        Self {
            hbar: HBAR_SI,
            h: 2.0 * PI * HBAR_SI,
            c: C_SI,
            g,
            system: UnitSystem::Si,
        }
    }

    /// hbar = c = 1; `g` is given in natural units (s^-1).
    pub fn natural_with_gravity(g: f64) -> Self {
        Self {
            hbar: 1.0,
            h: 2.0 * PI,
            c: 1.0,
            g,
            system: UnitSystem::Natural,
        }
    }

    pub fn natural() -> Self {
        Self::natural_with_gravity(G_STANDARD / C_SI)
    }

    pub fn for_system(system: UnitSystem) -> Self {
        match system {
            UnitSystem::Si => Self::si(),
            UnitSystem::Natural => Self::natural(),
        }
    }
}

impl Default for UnitContext {
    fn default() -> Self {
        Self::natural()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Mass,
    Time,
    Energy,
    Length,
    Momentum,
    Speed,
    Acceleration,
    Dimensionless,
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "mass" => Self::Mass,
            "time" => Self::Time,
            "energy" => Self::Energy,
            "length" => Self::Length,
            "momentum" => Self::Momentum,
            "speed" | "velocity" => Self::Speed,
            "acceleration" => Self::Acceleration,
            "dimensionless" | "1" => Self::Dimensionless,
            other => return Err(Error::UnknownDimension(other.to_string())),
        })
    }
}

/// A real number tagged with its physical dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension) -> Self {
        Self { value, dim }
    }
}

/// Multiplier taking an SI value of `dim` into natural units (s-based).
fn si_to_natural_factor(dim: Dimension, hbar: f64, c: f64) -> f64 {
    match dim {
        Dimension::Mass => c * c / hbar,
        Dimension::Energy => 1.0 / hbar,
        Dimension::Momentum => c / hbar,
        Dimension::Length => 1.0 / c,
        Dimension::Speed => 1.0 / c,
        Dimension::Acceleration => 1.0 / c,
        Dimension::Time | Dimension::Dimensionless => 1.0,
    }
}

/// Re-express `q` measured in `from` as a number in `to`.
pub fn convert_units(q: Quantity, from: &UnitContext, to: &UnitContext) -> Quantity {
    let value = match (from.system, to.system) {
        (UnitSystem::Si, UnitSystem::Natural) => {
            q.value * si_to_natural_factor(q.dim, from.hbar, from.c)
        }
        (UnitSystem::Natural, UnitSystem::Si) => {
            q.value / si_to_natural_factor(q.dim, to.hbar, to.c)
        }
        _ => q.value,
    };
    Quantity::new(value, q.dim)
}

/// Rest energy m c^2 in the context's own units.
pub fn rest_energy(mass: f64, units: &UnitContext) -> f64 {
    mass * units.c * units.c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_constants_are_exact() {
        let u = UnitContext::natural();
        assert_eq!(u.hbar, 1.0);
        assert_eq!(u.c, 1.0);
        assert_eq!(u.h, 2.0 * PI);
        let s = UnitContext::si();
        assert!((s.h / (2.0 * PI * s.hbar) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kilogram_round_trips() {
        let si = UnitContext::si();
        let nat = UnitContext::natural();
        let one_kg = Quantity::new(1.0, Dimension::Mass);
        let n = convert_units(one_kg, &si, &nat);
        assert!((n.value / (C_SI * C_SI / HBAR_SI) - 1.0).abs() < 1e-15);
        let back = convert_units(n, &nat, &si);
        assert!((back.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_stays_zero() {
        let si = UnitContext::si();
        let nat = UnitContext::natural();
        for dim in [
            Dimension::Mass,
            Dimension::Time,
            Dimension::Energy,
            Dimension::Length,
            Dimension::Momentum,
        ] {
            assert_eq!(convert_units(Quantity::new(0.0, dim), &si, &nat).value, 0.0);
        }
    }

    #[test]
    fn rest_energy_of_a_kilogram() {
        let e = rest_energy(1.0, &UnitContext::si());
        assert!((e - 8.987_551_787_368_176e16).abs() / e < 1e-15);
    }

    #[test]
    fn unknown_dimension_tag() {
        assert_eq!(
            "charm".parse::<Dimension>(),
            Err(Error::UnknownDimension("charm".into()))
        );
    }

    proptest::proptest! {
        #[test]
        fn round_trip_is_identity(v in -1e30f64..1e30, d in 0usize..5) {
            let dim = [Dimension::Mass, Dimension::Time, Dimension::Energy, Dimension::Length, Dimension::Momentum][d];
            let si = UnitContext::si();
            let nat = UnitContext::natural();
            let back = convert_units(convert_units(Quantity::new(v, dim), &si, &nat), &nat, &si);
            proptest::prop_assert!((back.value - v).abs() <= 1e-14 * v.abs());
        }
    }
}
