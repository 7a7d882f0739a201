//! Oblique jump relations for the incident and reflected shocks.
//!
//! Both shocks obey the same algebra once the packing fraction `b * rho` of
//! the gas entering the shock is known: `btilde` for the incident shock and
//! `btilde * beta_i` for the reflected one. Angles are carried as tangents.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::thermo::{GasModel, ReferenceState};

/// Relative slack applied at the open endpoints of the admissible
/// density-ratio interval.
pub const ADMISSIBILITY_SLACK: f64 = 1e-12;

/// Incident shock: density ratio, incidence angle (as a tangent) and
/// strength `epsilon = beta_i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IncidentShockInput {
    pub beta_i: f64,
    pub tan_phi_i: f64,
    pub epsilon: f64,
}

impl IncidentShockInput {
    /// `phi_i` in radians, strictly inside `(0, pi/2)`.
    pub fn new(beta_i: f64, phi_i: f64) -> Result<Self> {
        if !(phi_i > 0.0 && phi_i < FRAC_PI_2) {
            return Err(Error::Angle(phi_i));
        }
        Ok(Self::from_tan(beta_i, phi_i.tan()))
    }

    pub fn from_tan(beta_i: f64, tan_phi_i: f64) -> Self {
        Self {
            beta_i,
            tan_phi_i,
            epsilon: beta_i - 1.0,
        }
    }

    pub fn phi_i(&self) -> f64 {
        self.tan_phi_i.atan()
    }
}

/// Reflected shock: density ratio `rho2 / rho1` and the signed tangent of the
/// reflection angle (the physical branch is negative in this orientation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectedShockInput {
    pub beta_r: f64,
    pub tan_phi_r: f64,
}

/// Everything one oblique jump determines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObliqueJump {
    pub pressure_ratio: f64,
    pub tan_deflection: f64,
    /// Upstream Mach number squared, relative to the upstream sound speed.
    pub m_up_sq: f64,
    /// Downstream Mach number squared, relative to the downstream sound speed.
    pub m_down_sq: f64,
    /// Upstream pseudo-velocity components along and across the shock, in
    /// units of the upstream sound speed. Diagnostics only.
    pub q_t: f64,
    pub q_n: f64,
}

/// Admissible open interval `(1, upper)` for a density ratio across a shock
/// whose upstream packing fraction is `packing`.
fn upper_bound(gas: &GasModel, packing: f64) -> f64 {
    (gas.gamma + 1.0) / (gas.gamma - 1.0 + 2.0 * packing)
}

fn check_ratio(beta: f64, upper: f64) -> Result<()> {
    let ok = beta.is_finite()
        && beta >= 1.0 - ADMISSIBILITY_SLACK
        && beta <= upper * (1.0 + ADMISSIBILITY_SLACK);
    if ok {
        Ok(())
    } else {
        Err(Error::Admissibility {
            beta,
            lower: 1.0,
            upper,
        })
    }
}

/// `(1, (gamma+1)/(gamma-1+2 btilde))`, or the reflected-shock interval
/// `(1, (gamma+1)/(gamma-1+2 btilde beta_i))` when `beta_i` is given.
pub fn admissible_beta_bounds(gas: &GasModel, beta_i: Option<f64>) -> Result<(f64, f64)> {
    let gas = gas.validate()?;
    match beta_i {
        None => Ok((1.0, upper_bound(&gas, gas.btilde))),
        Some(beta_i) => {
            check_ratio(beta_i, upper_bound(&gas, gas.btilde))?;
            Ok((1.0, upper_bound(&gas, gas.btilde * beta_i)))
        }
    }
}

/// Whether `beta_i` is an admissible incident density ratio (endpoints
/// included within [`ADMISSIBILITY_SLACK`]).
pub fn is_admissible(gas: &GasModel, beta_i: f64) -> bool {
    check_ratio(beta_i, upper_bound(gas, gas.btilde)).is_ok()
}

fn oblique(gas: &GasModel, packing: f64, beta: f64, tan_phi: f64) -> Result<ObliqueJump> {
    let g = gas.gamma;
    let upper = upper_bound(gas, packing);
    check_ratio(beta, upper)?;
    let den_up = (g + 1.0) - (g - 1.0 + 2.0 * packing) * beta;
    if den_up <= ADMISSIBILITY_SLACK * (g + 1.0) {
        // Infinitely strong shock at the upper endpoint.
        return Err(Error::Admissibility {
            beta,
            lower: 1.0,
            upper,
        });
    }
    let t2 = tan_phi * tan_phi;
    let pressure_ratio = ((g + 1.0 - 2.0 * packing) * beta - (g - 1.0)) / den_up;
    let tan_deflection = (beta - 1.0) * tan_phi / (1.0 + beta * t2);
    let m_up_sq = 2.0 * beta * (1.0 - packing) * (1.0 + t2) / den_up;
    let m_down_sq = 2.0 * (1.0 - packing * beta) * (1.0 + beta * beta * t2)
        / ((g + 1.0) * beta - (g - 1.0 + 2.0 * packing * beta));
    let q_n = (m_up_sq / (1.0 + t2)).sqrt();
    Ok(ObliqueJump {
        pressure_ratio,
        tan_deflection,
        m_up_sq,
        m_down_sq,
        q_t: q_n * tan_phi,
        q_n,
    })
}

/// Jump across the incident shock, state 0 to state 1.
pub fn incident_oblique(inp: &IncidentShockInput, gas: &GasModel) -> Result<ObliqueJump> {
    let gas = gas.validate()?;
    if !(inp.tan_phi_i.is_finite() && inp.tan_phi_i > 0.0) {
        return Err(Error::Angle(inp.phi_i()));
    }
    oblique(&gas, gas.btilde, inp.beta_i, inp.tan_phi_i)
}

/// Jump across the reflected shock, state 1 to state 2.
pub fn reflected_oblique(
    beta_i: f64,
    inp: &ReflectedShockInput,
    gas: &GasModel,
) -> Result<ObliqueJump> {
    let gas = gas.validate()?;
    check_ratio(beta_i, upper_bound(&gas, gas.btilde))?;
    if !inp.tan_phi_r.is_finite() {
        return Err(Error::Angle(inp.tan_phi_r.atan()));
    }
    oblique(&gas, gas.btilde * beta_i, inp.beta_r, inp.tan_phi_r)
}

/// State behind a normal incident shock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalIncidentState {
    pub pressure_ratio: f64,
    /// Dimensional particle velocity behind the shock.
    pub u1: f64,
    pub v1: f64,
}

/// Pressure ratio and particle speed behind the planar incident shock; the
/// shock itself sits on `zeta = a0 sec(theta)`.
pub fn normal_incident_state(
    beta_i: f64,
    gas: &GasModel,
    reference: &ReferenceState,
) -> Result<NormalIncidentState> {
    let gas = gas.validate()?;
    let g = gas.gamma;
    let b = gas.btilde;
    let upper = upper_bound(&gas, b);
    check_ratio(beta_i, upper)?;
    let rho0 = reference.rho0;
    let rho1 = beta_i * rho0;
    let num = (g + 1.0) * rho1 - (g - 1.0) * rho0 - 2.0 * b * rho1;
    let den = (g + 1.0) * rho0 - (g - 1.0) * rho1 - 2.0 * b * rho1;
    if den <= 0.0 {
        return Err(Error::Admissibility {
            beta: beta_i,
            lower: 1.0,
            upper,
        });
    }
    let pressure_ratio = num / den;
    let p1 = pressure_ratio * reference.p0;
    let u1 = ((p1 - reference.p0) * (rho1 - rho0) / (rho0 * rho1))
        .max(0.0)
        .sqrt();
    Ok(NormalIncidentState {
        pressure_ratio,
        u1,
        v1: 0.0,
    })
}
