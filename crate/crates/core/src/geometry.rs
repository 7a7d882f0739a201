//! Self-similar plane `(zeta, theta)` with `zeta = |x| / t`.
//!
//! The wedge occupies `theta < alpha`. Four wavefronts split the rest of the
//! upper half-plane: the plane incident shock `zeta = a0 sec(theta)`, the
//! straight reflected shock from the reflection point `A` to the merge point
//! `B = (a0, 2 alpha)`, and the sonic circle `zeta = a0`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::thermo::ReferenceState;

/// Relative thickness, in units of `a0`, of the band in which a point is
/// tagged as lying on a wavefront.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Relative tolerance for the sonic classification.
pub const SONIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WedgeConfig {
    /// Half angle, radians.
    pub alpha: f64,
}

impl WedgeConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha < FRAC_PI_2 {
            Ok(Self { alpha })
        } else {
            Err(Error::Angle(alpha))
        }
    }

    pub fn from_degrees(alpha_deg: f64) -> Result<Self> {
        Self::new(alpha_deg.to_radians())
    }

    /// Polar angle of the merge point `B`.
    pub fn merge_angle(&self) -> f64 {
        2.0 * self.alpha
    }
}

/// Point of the self-similar plane with its reduced radius `xi = zeta / c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfSimilarPoint {
    pub zeta: f64,
    pub theta: f64,
    pub xi: f64,
}

impl SelfSimilarPoint {
    pub fn new(zeta: f64, theta: f64, reference: &ReferenceState) -> Self {
        Self {
            zeta,
            theta,
            xi: zeta / reference.c0,
        }
    }

    /// Builds the point from `xi / kappa0`, so that the sonic circle sits
    /// at `1` for every gas.
    pub fn from_scaled(xi_over_kappa0: f64, theta: f64, reference: &ReferenceState) -> Self {
        let xi = xi_over_kappa0 * reference.kappa0;
        Self {
            zeta: xi * reference.c0,
            theta,
            xi,
        }
    }

    pub fn xi_over_kappa0(&self, reference: &ReferenceState) -> f64 {
        self.xi / reference.kappa0
    }
}

/// Radial and angular pseudo-velocity components with the local sound
/// speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PseudoFlowState {
    pub u: f64,
    pub v: f64,
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    /// Undisturbed gas ahead of the incident shock.
    Omega0,
    /// State behind the incident shock.
    Omega1,
    /// State behind the reflected shock.
    Omega2,
    /// Subsonic disk around the wedge vertex.
    OmegaTilde,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Omega0 => "Omega0",
            Region::Omega1 => "Omega1",
            Region::Omega2 => "Omega2",
            Region::OmegaTilde => "OmegaTilde",
        }
    }
}

/// Wavefronts a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct BoundaryTags {
    pub incident: bool,
    pub reflected_line: bool,
    pub sonic_arc: bool,
}

impl BoundaryTags {
    pub fn any(&self) -> bool {
        self.incident || self.reflected_line || self.sonic_arc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionLabel {
    Interior(Region),
    Boundary(BoundaryTags),
}

impl RegionLabel {
    pub fn region(&self) -> Option<Region> {
        match self {
            RegionLabel::Interior(r) => Some(*r),
            RegionLabel::Boundary(_) => None,
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, RegionLabel::Boundary(_))
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Interior(r) => f.write_str(r.name()),
            RegionLabel::Boundary(tags) => {
                let names: Vec<&str> = [
                    (tags.incident, "incident"),
                    (tags.reflected_line, "reflected_line"),
                    (tags.sonic_arc, "sonic_arc"),
                ]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, n)| *n)
                .collect();
                write!(f, "boundary:{}", names.join("+"))
            }
        }
    }
}

/// Incident shock `zeta = a0 sec(theta)`.
pub fn incident_locus(theta: f64, reference: &ReferenceState) -> Result<f64> {
    let c = theta.cos();
    if !(theta.abs() < FRAC_PI_2) || c <= 0.0 {
        return Err(domain(format!(
            "incident locus undefined at theta = {theta}"
        )));
    }
    Ok(reference.a0 / c)
}

/// Straight reflected shock between `A` (`theta = alpha`) and `B`
/// (`theta = 2 alpha`).
pub fn reflected_line(theta: f64, alpha: f64, reference: &ReferenceState) -> Result<f64> {
    let slack = BOUNDARY_TOL * alpha;
    if !(theta >= alpha - slack && theta <= 2.0 * alpha + slack) {
        return Err(domain(format!(
            "reflected line defined on [{alpha}, {}], got theta = {theta}",
            2.0 * alpha
        )));
    }
    let den = (theta - alpha).sin() / alpha.cos() + (2.0 * alpha - theta).sin();
    Ok(reference.a0 * alpha.tan() / den)
}

/// Region or wavefront containing `pt`.
///
/// Away from wavefronts the labels partition the plane: the subsonic disk
/// first, then the undisturbed gas beyond the incident shock, then the strip
/// behind the reflected shock, and state 1 everywhere else.
pub fn region_classify(
    pt: &SelfSimilarPoint,
    alpha: f64,
    reference: &ReferenceState,
) -> Result<RegionLabel> {
    let (zeta, theta) = (pt.zeta, pt.theta);
    if !(theta >= alpha && theta <= PI) {
        return Err(domain(format!(
            "theta = {theta} outside the flow domain [{alpha}, pi]"
        )));
    }
    let a0 = reference.a0;
    let tol = BOUNDARY_TOL * a0;
    let on_reflected_span = theta <= 2.0 * alpha;
    let zeta_star = if on_reflected_span {
        Some(reflected_line(theta, alpha, reference)?)
    } else {
        None
    };
    let incident = if theta < FRAC_PI_2 {
        Some(incident_locus(theta, reference)?)
    } else {
        None
    };

    let tags = BoundaryTags {
        incident: incident.is_some_and(|z| (zeta - z).abs() <= tol),
        reflected_line: zeta_star.is_some_and(|z| (zeta - z).abs() <= tol),
        sonic_arc: (zeta - a0).abs() <= tol,
    };
    if tags.any() {
        return Ok(RegionLabel::Boundary(tags));
    }

    let region = if zeta < a0 {
        Region::OmegaTilde
    } else if incident.is_some_and(|z| zeta > z) {
        Region::Omega0
    } else if zeta_star.is_some_and(|z| zeta < z) {
        Region::Omega2
    } else {
        Region::Omega1
    };
    Ok(RegionLabel::Interior(region))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlowType {
    Supersonic,
    Subsonic,
    Sonic,
}

/// Characteristic speeds `d theta / d zeta` of the self-similar system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenstructure {
    /// Double eigenvalue carried by the pseudo-streamlines.
    pub lambda_contact: f64,
    /// Acoustic pair; absent when the flow is pseudo-subsonic.
    pub lambda_plus: Option<f64>,
    pub lambda_minus: Option<f64>,
    pub flow_type: FlowType,
}

pub fn eigenvalues_and_type(
    pt: &SelfSimilarPoint,
    flow: &PseudoFlowState,
) -> Result<Eigenstructure> {
    let zeta = pt.zeta;
    if !(zeta > 0.0) {
        return Err(domain(format!("zeta = {zeta} must be positive")));
    }
    let rel = flow.u - zeta;
    if rel == 0.0 {
        return Err(Error::DivisionByZero(
            "radial pseudo-velocity U - zeta vanishes".into(),
        ));
    }
    let a2 = flow.a * flow.a;
    let lambda_contact = flow.v / (zeta * rel);
    let radicand = flow.v * flow.v + rel * rel - a2;
    let scale = flow.v * flow.v + rel * rel + a2;

    let flow_type = if radicand.abs() <= SONIC_TOL * scale {
        FlowType::Sonic
    } else if radicand > 0.0 {
        FlowType::Supersonic
    } else {
        FlowType::Subsonic
    };
    if flow_type == FlowType::Subsonic {
        return Ok(Eigenstructure {
            lambda_contact,
            lambda_plus: None,
            lambda_minus: None,
            flow_type,
        });
    }
    let den = zeta * (rel * rel - a2);
    if den == 0.0 {
        return Err(Error::DivisionByZero(
            "(U - zeta)^2 equals a^2 with a real acoustic pair".into(),
        ));
    }
    let root = flow.a * radicand.max(0.0).sqrt();
    let centre = flow.v * rel;
    Ok(Eigenstructure {
        lambda_contact,
        lambda_plus: Some((centre + root) / den),
        lambda_minus: Some((centre - root) / den),
        flow_type,
    })
}
