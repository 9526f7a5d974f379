//! Uncertainty bookkeeping for the two weighing thought experiments: a clock
//! hung from a spring in a gravitational field, and a charged clock pushed by
//! a uniform electric field.
//!
//! `dq * dp ~ h` is taken as the equality `dp = h / dq`, which makes the
//! product `c^2 dm dtau / h` identically one.

use crate::error::{Error, Result};
use crate::units::UnitContext;

/// Spring-balance weighing in a gravitational field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxExperiment {
    /// Accuracy of the scale reading.
    pub delta_q: f64,
    /// Reading interval on an external clock.
    pub t: f64,
    pub g: f64,
    pub spring_k: Option<f64>,
    pub spring_l: Option<f64>,
}

impl BoxExperiment {
    pub fn new(delta_q: f64, t: f64, g: f64) -> Result<Self> {
        positive("delta_q", delta_q)?;
        positive("t", t)?;
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::InvalidGravity(g));
        }
        Ok(Self {
            delta_q,
            t,
            g,
            spring_k: None,
            spring_l: None,
        })
    }

    pub fn with_spring(mut self, k: f64, l: f64) -> Self {
        self.spring_k = Some(k);
        self.spring_l = Some(l);
        self
    }

    /// Mass read off the spring, when one is attached.
    pub fn mass(&self) -> Option<Result<f64>> {
        Some(spring_mass(self.spring_k?, self.spring_l?, self.g))
    }
}

/// Weighing by acceleration in a uniform electric field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EFieldExperiment {
    pub delta_q: f64,
    pub t: f64,
    pub e_field: f64,
    pub charge: f64,
    /// Measured average velocity.
    pub v: f64,
}

impl EFieldExperiment {
    pub fn new(delta_q: f64, t: f64, e_field: f64, charge: f64, v: f64) -> Result<Self> {
        positive("delta_q", delta_q)?;
        positive("t", t)?;
        Ok(Self {
            delta_q,
            t,
            e_field,
            charge,
            v,
        })
    }

    /// `m = e E t / v`.
    pub fn mass(&self) -> Result<f64> {
        if self.v == 0.0 {
            return Err(Error::WeighAtRest(self.v));
        }
        Ok(self.charge * self.e_field * self.t / self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub delta_p: f64,
    pub delta_m: f64,
    pub delta_tau: f64,
    /// `c^2 dm dtau / h`.
    pub product_ratio: f64,
    /// `c^2 dm dtau / (hbar / 2)`; equals `4 pi` whenever `product_ratio` is one.
    pub product_ratio_half_hbar: f64,
    /// Only set for the electric-field experiment.
    pub delta_v: Option<f64>,
}

impl UncertaintyReport {
    fn new(
        delta_p: f64,
        delta_m: f64,
        delta_tau: f64,
        delta_v: Option<f64>,
        units: &UnitContext,
    ) -> Self {
        let product = units.c * units.c * delta_m * delta_tau;
        Self {
            delta_p,
            delta_m,
            delta_tau,
            product_ratio: product / units.h,
            product_ratio_half_hbar: product / (0.5 * units.hbar),
            delta_v,
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{v} must be positive and finite"),
        })
    }
}

/// Hooke's law balance `k l = m g`.
pub fn spring_mass(k: f64, l: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidGravity(g));
    }
    positive("spring_k", k)?;
    if !(l >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "spring_l",
            reason: format!("{l} must be non-negative"),
        });
    }
    Ok(k * l / g)
}

/// Force resolution `dp / t ~ g dm` plus the red shift `dtau / t = g dq / c^2`.
pub fn box_uncertainties(exp: &BoxExperiment, units: &UnitContext) -> UncertaintyReport {
    let delta_p = units.h / exp.delta_q;
    let delta_m = delta_p / (exp.g * exp.t);
    let delta_tau = exp.g * exp.delta_q * exp.t / (units.c * units.c);
    UncertaintyReport::new(delta_p, delta_m, delta_tau, None, units)
}

/// `dp ~ v dm` plus the spread in the time-dilation factor `dtau ~ v dq / c^2`.
pub fn efield_uncertainties(
    exp: &EFieldExperiment,
    units: &UnitContext,
) -> Result<UncertaintyReport> {
    if exp.v == 0.0 {
        return Err(Error::WeighAtRest(exp.v));
    }
    if !(exp.v > 0.0) || exp.v >= units.c {
        return Err(Error::Superluminal {
            v: exp.v,
            c: units.c,
        });
    }
    let delta_p = units.h / exp.delta_q;
    let delta_m = delta_p / exp.v;
    let delta_v = exp.delta_q / exp.t;
    let delta_tau = exp.v * exp.delta_q / (units.c * units.c);
    Ok(UncertaintyReport::new(
        delta_p,
        delta_m,
        delta_tau,
        Some(delta_v),
        units,
    ))
}

/// `sqrt(1 - (v/c)^2)`.
pub fn dilation_factor(v: f64, units: &UnitContext) -> Result<f64> {
    if !(v >= 0.0) || v >= units.c {
        return Err(Error::Superluminal { v, c: units.c });
    }
    let beta = v / units.c;
    Ok(((1.0 - beta) * (1.0 + beta)).sqrt())
}
