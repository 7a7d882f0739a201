//! Weakly nonlinear correction at the diffracted front `r = c0 kappa0 t`.
//!
//! Along each ray the amplitude obeys the cylindrical inviscid Burgers
//! transport law with nonlinearity `(gamma + 1) / (2 (1 - btilde))`. Matching
//! with the square-root behaviour of the linear field fixes the amplitude
//! from the wedge geometry alone; the nonlinear phase `psi` then follows
//! from a quadratic in `sqrt(psi)`. Rays with `beta < alpha` carry an
//! expansion, rays with `beta > alpha` a weak shock.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linear_acoustics::{state2_expansion, wedge_exponent};
use crate::thermo::{GasModel, ReferenceState};

/// Separation `|beta - alpha|` below which the amplitude is singular.
const SPLIT_TOL: f64 = 1e-12;

fn check_ray(beta_angle: f64, alpha: f64) -> Result<()> {
    if !(beta_angle >= 0.0 && beta_angle < PI - alpha) {
        return Err(domain(format!(
            "ray angle {beta_angle} outside [0, {})",
            PI - alpha
        )));
    }
    if (beta_angle - alpha).abs() <= SPLIT_TOL * alpha.max(1.0) {
        return Err(Error::Singular(format!(
            "front amplitude diverges on the ray beta = alpha = {alpha}"
        )));
    }
    Ok(())
}

/// Matching coefficient
/// `C(beta) = sqrt(2) mu sin(2 mu pi) / (pi (sin^2(mu pi) - cos^2(mu beta)))`.
pub fn c_beta(beta_angle: f64, alpha: f64) -> Result<f64> {
    check_ray(beta_angle, alpha)?;
    let mu = wedge_exponent(alpha);
    let den = (mu * PI).sin().powi(2) - (mu * beta_angle).cos().powi(2);
    Ok(2f64.sqrt() * mu * (2.0 * mu * PI).sin() / (PI * den))
}

/// Signed first-order amplitude of the front disturbance, `-C(beta)`:
/// negative on expansion rays, positive on shock rays.
pub fn matched_amplitude(beta_angle: f64, alpha: f64) -> Result<f64> {
    Ok(-c_beta(beta_angle, alpha)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrontKind {
    Rarefaction,
    Shock,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontClassification {
    pub kind: FrontKind,
    pub beta_angle: f64,
    pub alpha: f64,
}

pub fn classify_front(beta_angle: f64, alpha: f64) -> Result<FrontClassification> {
    check_ray(beta_angle, alpha)?;
    let kind = if beta_angle < alpha {
        FrontKind::Rarefaction
    } else {
        FrontKind::Shock
    };
    Ok(FrontClassification {
        kind,
        beta_angle,
        alpha,
    })
}

fn require(beta_angle: f64, alpha: f64, kind: FrontKind) -> Result<()> {
    let found = classify_front(beta_angle, alpha)?.kind;
    if found == kind {
        Ok(())
    } else {
        Err(Error::Classification(format!(
            "ray beta = {beta_angle} carries a {found:?}, expected {kind:?}"
        )))
    }
}

/// Finite-difference value of `a_r + k a a_tau + a / (2 r)` with
/// `k = (gamma + 1) / (2 (1 - btilde))`.
pub fn transport_residual<F>(a: F, r: f64, tau: f64, h: f64, gas: &GasModel) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    if !(h > 0.0 && r - h > 0.0) {
        return Err(Error::Stencil(format!(
            "radial stencil [{}, {}] must stay in r > 0",
            r - h,
            r + h
        )));
    }
    let centre = a(r, tau);
    let a_r = (a(r + h, tau) - a(r - h, tau)) / (2.0 * h);
    let a_tau = (a(r, tau + h) - a(r, tau - h)) / (2.0 * h);
    Ok(a_r + gas.nonlinearity() * centre * a_tau + centre / (2.0 * r))
}

/// `Pi = epsilon A (gamma + 1) sqrt(r) / (2 (1 - btilde))`.
pub fn phase_shift(r: f64, amplitude: f64, epsilon: f64, gas: &GasModel) -> f64 {
    epsilon * amplitude * gas.nonlinearity() * r.sqrt()
}

/// Root of `psi = phi + 2 Pi sqrt(psi)` with `sqrt(psi) = Pi + sqrt(phi + Pi^2)`.
pub fn psi_root(
    phi_phase: f64,
    r: f64,
    amplitude: f64,
    epsilon: f64,
    gas: &GasModel,
) -> Result<f64> {
    if !(r >= 0.0) || !(epsilon >= 0.0) {
        return Err(domain(format!(
            "need r >= 0 and epsilon >= 0, got {r}, {epsilon}"
        )));
    }
    let pi = phase_shift(r, amplitude, epsilon, gas);
    let radicand = phi_phase + pi * pi;
    if radicand < 0.0 {
        return Err(domain(format!(
            "phase radicand {radicand} is negative: point lies beyond the fold"
        )));
    }
    let root = pi + radicand.sqrt();
    if root < 0.0 {
        return Err(domain("no non-negative root for sqrt(psi)"));
    }
    Ok(root * root)
}

/// Relative residual of the implicit phase relation at `psi`.
pub fn phase_residual(
    psi: f64,
    phi_phase: f64,
    r: f64,
    amplitude: f64,
    epsilon: f64,
    gas: &GasModel,
) -> f64 {
    let rhs = phi_phase + 2.0 * epsilon * amplitude * gas.nonlinearity() * (psi * r).sqrt();
    (psi - rhs).abs() / psi.abs().max(phi_phase.abs()).max(f64::MIN_POSITIVE)
}

/// Fast-variable description of the front disturbance on one ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontWave {
    pub c_beta: f64,
    /// Ray label, equal to the ray angle.
    pub ray_label: f64,
    /// Amplitude scale `epsilon^2`.
    pub delta_amp: f64,
    /// Profile value `-C sqrt(tau)`.
    pub profile: f64,
    pub tau: f64,
    pub psi: f64,
    /// Linear phase `c0 kappa0 t - r`.
    pub phi_phase: f64,
}

impl FrontWave {
    pub fn new(
        r: f64,
        t: f64,
        beta_angle: f64,
        alpha: f64,
        epsilon: f64,
        gas: &GasModel,
        reference: &ReferenceState,
    ) -> Result<Self> {
        let c = c_beta(beta_angle, alpha)?;
        let phi_phase = reference.front_speed() * t - r;
        let psi = psi_root(phi_phase, r, -c, epsilon, gas)?;
        let delta_amp = epsilon * epsilon;
        let tau = if delta_amp > 0.0 {
            psi / delta_amp
        } else {
            0.0
        };
        Ok(Self {
            c_beta: c,
            ray_label: beta_angle,
            delta_amp,
            profile: -c * tau.sqrt(),
            tau,
            psi,
            phi_phase,
        })
    }
}

/// Density, radial and angular velocity, and entropy offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontState {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub entropy: f64,
}

/// First-order state behind the reflected shock on the ray `theta = alpha + beta`.
pub fn state_two(
    beta_angle: f64,
    alpha: f64,
    epsilon: f64,
    gas: &GasModel,
    reference: &ReferenceState,
) -> FrontState {
    let s2 = state2_expansion(alpha + beta_angle, alpha, gas);
    FrontState {
        rho: reference.rho0 * (1.0 + s2.rho1 * epsilon),
        u: reference.c0 * s2.u1 * epsilon,
        v: reference.c0 * s2.v1 * epsilon,
        entropy: 0.0,
    }
}

/// Expansion profile behind the front on a ray `beta < alpha`; state 2
/// unchanged ahead of it.
pub fn rarefaction_profile(
    r: f64,
    t: f64,
    beta_angle: f64,
    alpha: f64,
    epsilon: f64,
    gas: &GasModel,
    reference: &ReferenceState,
) -> Result<FrontState> {
    require(beta_angle, alpha, FrontKind::Rarefaction)?;
    if !(r > 0.0) {
        return Err(domain(format!("radius {r} must be positive")));
    }
    let base = state_two(beta_angle, alpha, epsilon, gas, reference);
    let front = reference.front_speed() * t;
    if r >= front {
        return Ok(base);
    }
    let amplitude = matched_amplitude(beta_angle, alpha)?;
    let root = psi_root(front - r, r, amplitude, epsilon, gas)?.sqrt();
    let factor = epsilon * amplitude * root / r.sqrt();
    Ok(FrontState {
        rho: base.rho + factor * reference.rho0,
        u: base.u + factor * reference.front_speed(),
        ..base
    })
}

/// Jump of `rho_r` across an expansion front, `(1 - btilde) rho0 / ((gamma + 1) r)`.
pub fn gradient_jump(r: f64, gas: &GasModel, rho0: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("radius {r} must be positive")));
    }
    Ok((1.0 - gas.btilde) * rho0 / ((gas.gamma + 1.0) * r))
}

/// Relative advance `epsilon^2 (gamma + 1)^2 C^2 / (4 (1 - btilde)^2)` of
/// the diffracted shock over the linear front.
pub fn shock_locus_coefficient(c: f64, epsilon: f64, gas: &GasModel) -> f64 {
    let p = phase_shift(1.0, c, epsilon, gas);
    p * p
}

/// Diffracted shock radius at time `t` on a ray `beta > alpha`.
pub fn shock_locus(
    t: f64,
    beta_angle: f64,
    alpha: f64,
    epsilon: f64,
    gas: &GasModel,
    reference: &ReferenceState,
) -> Result<f64> {
    require(beta_angle, alpha, FrontKind::Shock)?;
    let c = c_beta(beta_angle, alpha)?;
    Ok(reference.front_speed() * t * (1.0 + shock_locus_coefficient(c, epsilon, gas)))
}

/// Fold of the characteristic family, where `sqrt(psi) = Pi`: the phase
/// there equals `-Pi^2`.
pub fn fold_phase(r: f64, c: f64, epsilon: f64, gas: &GasModel) -> f64 {
    let p = phase_shift(r, c, epsilon, gas);
    -p * p
}

/// `epsilon^2 C^2 (gamma + 1) / (2 (1 - btilde))` for a given coefficient.
pub fn shock_strength_from_coefficient(c: f64, epsilon: f64, gas: &GasModel) -> f64 {
    epsilon * epsilon * c * c * (gas.gamma + 1.0) / (2.0 * (1.0 - gas.btilde))
}

/// Density jump across the diffracted shock, in units of `rho0`.
pub fn shock_strength(beta_angle: f64, alpha: f64, epsilon: f64, gas: &GasModel) -> Result<f64> {
    require(beta_angle, alpha, FrontKind::Shock)?;
    Ok(shock_strength_from_coefficient(
        c_beta(beta_angle, alpha)?,
        epsilon,
        gas,
    ))
}
