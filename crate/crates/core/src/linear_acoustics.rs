//! First-order (acoustic) field behind a weak incident shock.
//!
//! Outside the sonic circle the first-order density is piecewise constant:
//! `1` behind the incident shock and `2` behind the reflected one. Inside,
//! it solves a degenerate elliptic equation whose closed-form solution is
//! written in the Busemann variable `s`, with exponent
//! `mu = (pi/2) / (pi - alpha)` set by the wedge.

use std::f64::consts::PI;

use serde::Serialize;

use crate::atan_pi;
use crate::error::{domain, Error, Result};
use crate::geometry::{region_classify, BoundaryTags, Region, RegionLabel, SelfSimilarPoint};
use crate::thermo::{GasModel, ReferenceState};

/// Width of the band `1 - xi/kappa0` where the near-front asymptote
/// replaces the closed form.
pub const RING_WIDTH: f64 = 1e-14;

/// Relative slack on `xi <= kappa0`.
pub const ARC_SLACK: f64 = 1e-12;

/// Threshold on `|cos^2(mu beta) - sin^2(mu pi)|` below which the
/// near-front coefficient is declared singular.
const MERGE_TOL: f64 = 1e-12;

/// Small-strength expansion coefficients of the state behind the incident
/// shock, velocities and sound speed in units of `c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionCoefficients {
    pub rho1: f64,
    pub p1: f64,
    pub p2: f64,
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
    pub a1: f64,
    pub a2: f64,
    /// Coefficient of `epsilon^3` in `(S1 - S0) / c_v`.
    pub entropy3: f64,
    /// Coefficient of `epsilon sec(theta)` in the incident locus `zeta / c0`.
    pub locus1: f64,
}

/// First-order state behind the reflected shock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateTwoCoefficients {
    pub rho1: f64,
    pub u1: f64,
    pub v1: f64,
}

pub fn state1_expansion(theta: f64, gas: &GasModel) -> ExpansionCoefficients {
    let g = gas.gamma;
    let b = gas.btilde;
    let k = gas.kappa0();
    let q = 1.0 - b;
    let (sin, cos) = theta.sin_cos();
    ExpansionCoefficients {
        rho1: 1.0,
        p1: g / q,
        p2: g * (g - 1.0 + 2.0 * b) / (2.0 * q * q),
        u1: k * cos,
        u2: (g - 3.0 + 4.0 * b) * k * cos / (4.0 * q),
        v1: -k * sin,
        v2: (3.0 - g - 4.0 * b) * k * sin / (4.0 * q),
        a1: k * (g - 1.0 + 2.0 * b) / (2.0 * q),
        a2: k * ((g - 1.0) * (g - 3.0 + 8.0 * b) + 8.0 * b * b) / (8.0 * q * q),
        entropy3: g * (g * g - 1.0) / (12.0 * q.powi(3)),
        locus1: k * (g + 1.0) / (4.0 * q),
    }
}

pub fn state2_expansion(theta: f64, alpha: f64, gas: &GasModel) -> StateTwoCoefficients {
    let k = gas.kappa0();
    let amp = 2.0 * k * alpha.cos();
    StateTwoCoefficients {
        rho1: 2.0,
        u1: amp * (theta - alpha).cos(),
        v1: -amp * (theta - alpha).sin(),
    }
}

/// Busemann variable `s = x / (1 + sqrt(1 - x^2))` of `x = xi / kappa0`.
pub fn busemann(xi_over_kappa0: f64) -> f64 {
    let x = xi_over_kappa0;
    x / (1.0 + (1.0 - x * x).max(0.0).sqrt())
}

/// Wedge exponent `mu = (pi/2) / (pi - alpha)`.
pub fn wedge_exponent(alpha: f64) -> f64 {
    0.5 * PI / (PI - alpha)
}

/// Angular and radial coordinates of the closed-form solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffractionFrame {
    pub mu: f64,
    /// Angle from the wedge face, `theta - alpha`.
    pub beta_angle: f64,
    pub s: f64,
}

impl DiffractionFrame {
    pub fn new(pt: &SelfSimilarPoint, alpha: f64, reference: &ReferenceState) -> Self {
        Self {
            mu: wedge_exponent(alpha),
            beta_angle: pt.theta - alpha,
            s: busemann(pt.xi_over_kappa0(reference)),
        }
    }

    /// Closed-form density at this frame.
    pub fn density(&self) -> f64 {
        let (mu, s) = (self.mu, self.s);
        let sm = s.powf(mu);
        let s2m = sm * sm;
        let (sin_p, cos_p) = (mu * PI).sin_cos();
        let cos_b = (mu * self.beta_angle).cos();
        let num = (1.0 - s2m) * cos_p;
        let first = atan_pi(num, -(1.0 + s2m) * sin_p + 2.0 * sm * cos_b);
        let second = atan_pi(-num, (1.0 + s2m) * sin_p + 2.0 * sm * cos_b);
        1.0 + (first + second) / PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaTag {
    /// Undisturbed gas, zero perturbation.
    Ambient,
    /// Piecewise-constant value behind the incident or reflected shock.
    Piecewise,
    /// Closed-form solution inside the sonic circle.
    ClosedForm,
    /// Square-root asymptote next to the sonic circle.
    NearFront,
}

impl FormulaTag {
    pub fn name(&self) -> &'static str {
        match self {
            FormulaTag::Ambient => "ambient",
            FormulaTag::Piecewise => "piecewise",
            FormulaTag::ClosedForm => "closed_form",
            FormulaTag::NearFront => "near_front",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub point: SelfSimilarPoint,
    pub region: RegionLabel,
    /// First-order density perturbation.
    pub rho1: f64,
    pub formula_tag: FormulaTag,
}

fn arc_value(beta_angle: f64, alpha: f64) -> Result<f64> {
    let gap = beta_angle - alpha;
    if gap.abs() <= MERGE_TOL * alpha {
        Err(Error::Singular(
            "arc value undefined at the merge point".into(),
        ))
    } else if gap < 0.0 {
        Ok(2.0)
    } else {
        Ok(1.0)
    }
}

/// Piecewise-constant field behind the incident (`1`) and reflected (`2`)
/// shocks, including their traces on the sonic arc.
pub fn first_order_piecewise(
    pt: &SelfSimilarPoint,
    alpha: f64,
    reference: &ReferenceState,
) -> Result<FieldSample> {
    let region = region_classify(pt, alpha, reference)?;
    let rho1 = match region {
        RegionLabel::Interior(Region::Omega1) => 1.0,
        RegionLabel::Interior(Region::Omega2) => 2.0,
        RegionLabel::Boundary(BoundaryTags {
            sonic_arc: true,
            reflected_line: false,
            ..
        }) => arc_value(pt.theta - alpha, alpha)?,
        RegionLabel::Boundary(BoundaryTags {
            sonic_arc: true, ..
        }) => {
            return Err(Error::Singular(
                "piecewise field is two-valued at the merge point".into(),
            ))
        }
        other => {
            return Err(Error::Region {
                found: other.to_string(),
                expected: "Omega1 or Omega2".into(),
            })
        }
    };
    Ok(FieldSample {
        point: *pt,
        region,
        rho1,
        formula_tag: FormulaTag::Piecewise,
    })
}

/// `sqrt(2) mu sin(2 mu pi) / (pi (cos^2(mu beta) - sin^2(mu pi)))`,
/// the coefficient of `sqrt(1 - xi/kappa0)` next to the sonic circle.
pub fn near_front_coefficient(theta: f64, alpha: f64) -> Result<f64> {
    let mu = wedge_exponent(alpha);
    let beta = theta - alpha;
    let den = (mu * beta).cos().powi(2) - (mu * PI).sin().powi(2);
    if den.abs() <= MERGE_TOL {
        return Err(Error::Singular(format!(
            "near-front coefficient diverges at theta = {theta} (merge point)"
        )));
    }
    Ok(2f64.sqrt() * mu * (2.0 * mu * PI).sin() / (PI * den))
}

/// Closed-form first-order density inside the sonic circle (and its limit
/// on the circle itself).
pub fn kb_density(
    pt: &SelfSimilarPoint,
    alpha: f64,
    reference: &ReferenceState,
) -> Result<FieldSample> {
    let theta = pt.theta;
    if !(theta >= alpha && theta <= PI) {
        return Err(domain(format!("theta = {theta} outside [{alpha}, pi]")));
    }
    let x = pt.xi_over_kappa0(reference);
    if !(0.0..=1.0 + ARC_SLACK).contains(&x) {
        return Err(domain(format!(
            "xi / kappa0 = {x} lies outside the sonic circle"
        )));
    }
    let beta = theta - alpha;
    let gap = 1.0 - x;
    let (rho1, formula_tag) = if gap <= 0.0 {
        (arc_value(beta, alpha)?, FormulaTag::ClosedForm)
    } else if gap < RING_WIDTH {
        let base = arc_value(beta, alpha)?;
        (
            base + near_front_coefficient(theta, alpha)? * gap.sqrt(),
            FormulaTag::NearFront,
        )
    } else {
        (
            DiffractionFrame::new(pt, alpha, reference).density(),
            FormulaTag::ClosedForm,
        )
    };
    let region = if gap <= 0.0 {
        RegionLabel::Boundary(BoundaryTags {
            sonic_arc: true,
            ..Default::default()
        })
    } else {
        region_classify(pt, alpha, reference)?
    };
    Ok(FieldSample {
        point: *pt,
        region,
        rho1,
        formula_tag,
    })
}

/// First-order density anywhere in the flow domain: zero ahead of the
/// incident shock, piecewise constant behind the shocks, closed form inside
/// the sonic circle.
pub fn outer_field(
    pt: &SelfSimilarPoint,
    alpha: f64,
    reference: &ReferenceState,
) -> Result<FieldSample> {
    let region = region_classify(pt, alpha, reference)?;
    match region {
        RegionLabel::Interior(Region::OmegaTilde) => kb_density(pt, alpha, reference),
        RegionLabel::Interior(Region::Omega0) => Ok(FieldSample {
            point: *pt,
            region,
            rho1: 0.0,
            formula_tag: FormulaTag::Ambient,
        }),
        RegionLabel::Boundary(tags) if tags.sonic_arc && !tags.reflected_line => {
            let mut sample = kb_density(&clamp_to_circle(pt, reference), alpha, reference)?;
            sample.point = *pt;
            sample.region = region;
            Ok(sample)
        }
        _ => first_order_piecewise(pt, alpha, reference),
    }
}

fn clamp_to_circle(pt: &SelfSimilarPoint, reference: &ReferenceState) -> SelfSimilarPoint {
    if pt.xi_over_kappa0(reference) > 1.0 {
        SelfSimilarPoint::from_scaled(1.0, pt.theta, reference)
    } else {
        *pt
    }
}

/// Centred finite-difference value of
/// `xi^2 ((1 - (xi/kappa0)^2) rho_xi)_xi + rho_theta_theta + xi rho_xi`
/// at `(xi, theta)` with step `h` in both variables.
///
/// The stencil must stay inside `0 < xi < kappa0`, `alpha <= theta <= pi`.
pub fn degenerate_elliptic_residual<F>(
    field: F,
    xi: f64,
    theta: f64,
    h: f64,
    alpha: f64,
    kappa0: f64,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    if !(h > 0.0) {
        return Err(Error::Stencil(format!("step {h} must be positive")));
    }
    if !(xi - h > 0.0 && xi + h < kappa0) {
        return Err(Error::Stencil(format!(
            "radial stencil [{}, {}] leaves (0, {kappa0})",
            xi - h,
            xi + h
        )));
    }
    if !(theta - h >= alpha && theta + h <= PI) {
        return Err(Error::Stencil(format!(
            "angular stencil [{}, {}] leaves [{alpha}, pi]",
            theta - h,
            theta + h
        )));
    }
    let weight = |x: f64| 1.0 - (x / kappa0).powi(2);
    let centre = field(xi, theta);
    let out = field(xi + h, theta);
    let inn = field(xi - h, theta);
    let flux =
        (weight(xi + 0.5 * h) * (out - centre) - weight(xi - 0.5 * h) * (centre - inn)) / (h * h);
    let angular = (field(xi, theta + h) - 2.0 * centre + field(xi, theta - h)) / (h * h);
    let radial = (out - inn) / (2.0 * h);
    Ok(xi * xi * flux + angular + xi * radial)
}
