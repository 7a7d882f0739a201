//! Inner region around the merge point `B`, where the reflected shock meets
//! the sonic circle and the outer asymptotics break down.
//!
//! Stretched coordinates are `r' = (xi - kappa0) / epsilon` and
//! `theta' = (theta - 2 alpha) / sqrt(epsilon)`. The leading amplitude `U`
//! obeys a mixed-type equation of transonic small-disturbance form whose
//! type changes where `vartheta U = r'`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::atan_pi;
use crate::error::{domain, Result};
use crate::geometry::SelfSimilarPoint;
use crate::thermo::{GasModel, ReferenceState};

/// Relative tolerance for the sonic classification.
pub const SONIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InnerPoint {
    pub r_prime: f64,
    pub theta_prime: f64,
    /// `2 r' / (kappa0 theta'^2)`; absent on `theta' = 0`.
    pub eta: Option<f64>,
}

impl InnerPoint {
    pub fn new(r_prime: f64, theta_prime: f64, kappa0: f64) -> Self {
        let eta =
            (theta_prime != 0.0).then(|| 2.0 * r_prime / (kappa0 * theta_prime * theta_prime));
        Self {
            r_prime,
            theta_prime,
            eta,
        }
    }
}

/// Maps an outer point to stretched coordinates.
pub fn stretch(
    pt: &SelfSimilarPoint,
    alpha: f64,
    epsilon: f64,
    reference: &ReferenceState,
) -> Result<InnerPoint> {
    if !(epsilon > 0.0) {
        return Err(domain(format!("epsilon = {epsilon} must be positive")));
    }
    let k = reference.kappa0;
    Ok(InnerPoint::new(
        (pt.xi - k) / epsilon,
        (pt.theta - 2.0 * alpha) / epsilon.sqrt(),
        k,
    ))
}

/// Outer point at given stretched coordinates.
pub fn unstretch(
    ip: &InnerPoint,
    alpha: f64,
    epsilon: f64,
    reference: &ReferenceState,
) -> SelfSimilarPoint {
    let xi = reference.kappa0 + epsilon * ip.r_prime;
    SelfSimilarPoint::new(
        xi * reference.c0,
        2.0 * alpha + epsilon.sqrt() * ip.theta_prime,
        reference,
    )
}

/// Leading-order linear density near `B`:
/// `1 + (1/pi) atan(sqrt(-2 r'/kappa0) / theta')` on the `[0, pi]` branch.
pub fn inner_linear(ip: &InnerPoint, kappa0: f64) -> Result<f64> {
    if !(ip.r_prime < 0.0) {
        return Err(domain(format!(
            "inner linear field needs r' < 0, got {}",
            ip.r_prime
        )));
    }
    Ok(1.0 + atan_pi((-2.0 * ip.r_prime / kappa0).sqrt(), ip.theta_prime) / PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InnerGeometry {
    pub kappa0: f64,
    /// `(kappa0 / 2) (gamma + 1) / (1 - btilde)`.
    pub vartheta: f64,
    /// Vertex offset of the shock parabolas.
    pub theta0: f64,
    pub sonic_s: f64,
    pub sonic_r: f64,
}

impl InnerGeometry {
    /// Reflected-shock locus and its slope in `theta'`.
    pub fn reflected_shock(&self, theta_prime: f64) -> (f64, f64) {
        let d = theta_prime - self.theta0;
        (
            0.5 * self.kappa0 * d * d + 1.5 * self.vartheta,
            self.kappa0 * d,
        )
    }
}

pub fn inner_geometry(gas: &GasModel, theta0: f64) -> Result<InnerGeometry> {
    let gas = gas.validate()?;
    let kappa0 = gas.kappa0();
    let vartheta = kappa0 * gas.nonlinearity();
    Ok(InnerGeometry {
        kappa0,
        vartheta,
        theta0,
        sonic_s: vartheta,
        sonic_r: 2.0 * vartheta,
    })
}

/// Value `1 + (1/pi) atan(sqrt(-eta))` carried inside the diffracted shock.
fn diffracted_value(eta: Option<f64>) -> Result<f64> {
    match eta {
        Some(e) if e < 0.0 => Ok(1.0 + (-e).sqrt().atan() / PI),
        _ => Err(domain("diffracted branch needs eta < 0")),
    }
}

/// Reflected shock `S_R` and diffracted shock `S_D` at `theta'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockLoci {
    pub s_r: f64,
    pub s_d: f64,
}

pub fn shock_loci(theta_prime: f64, eta: f64, geom: &InnerGeometry) -> Result<ShockLoci> {
    if !(eta < 0.0) {
        return Err(domain(format!("diffracted shock needs eta < 0, got {eta}")));
    }
    let (s_r, _) = geom.reflected_shock(theta_prime);
    let base = s_r - 1.5 * geom.vartheta;
    let s_d = base + 0.5 * geom.vartheta * (2.0 + (-eta).sqrt().atan() / PI);
    Ok(ShockLoci { s_r, s_d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InnerWave {
    Reflected,
    Diffracted,
}

/// Piecewise-constant weak solutions across `S_R` or `S_D`.
pub fn inner_weak_solution(ip: &InnerPoint, geom: &InnerGeometry, kind: InnerWave) -> Result<f64> {
    match kind {
        InnerWave::Reflected => {
            let (s_r, _) = geom.reflected_shock(ip.theta_prime);
            Ok(if ip.r_prime > s_r { 1.0 } else { 2.0 })
        }
        InnerWave::Diffracted => {
            let eta = ip
                .eta
                .ok_or_else(|| domain("diffracted solution undefined on theta' = 0"))?;
            let loci = shock_loci(ip.theta_prime, eta, geom)?;
            if ip.r_prime > loci.s_d {
                Ok(1.0)
            } else {
                diffracted_value(ip.eta)
            }
        }
    }
}

/// Three-branch expansion-fan profile in the similarity variable
/// `x = r' / theta'^2`.
pub fn expansion_fan(x: f64, theta_prime: f64, geom: &InnerGeometry) -> Result<f64> {
    if theta_prime == 0.0 {
        return Err(domain("fan profile undefined on theta' = 0"));
    }
    let t2 = theta_prime * theta_prime;
    if x < geom.vartheta / t2 {
        diffracted_value(Some(2.0 * x / geom.kappa0))
    } else if x < 2.0 * geom.vartheta / t2 {
        Ok(t2 * x.sqrt())
    } else {
        Ok(2.0)
    }
}

/// Mismatch between the middle fan branch at its outer edge and the
/// constant `2` beyond it: `|theta'| sqrt(2 vartheta) - 2`.
pub fn fan_edge_gap(theta_prime: f64, geom: &InnerGeometry) -> f64 {
    let t2 = theta_prime * theta_prime;
    t2 * (2.0 * geom.vartheta / t2).sqrt() - 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InnerFlowType {
    Elliptic,
    Hyperbolic,
    Sonic,
}

pub fn mixed_type_classify(ip: &InnerPoint, u: f64, geom: &InnerGeometry) -> InnerFlowType {
    let lhs = geom.vartheta * u;
    let diff = lhs - ip.r_prime;
    if diff.abs() <= SONIC_TOL * lhs.abs().max(ip.r_prime.abs()).max(1.0) {
        InnerFlowType::Sonic
    } else if diff > 0.0 {
        InnerFlowType::Elliptic
    } else {
        InnerFlowType::Hyperbolic
    }
}

/// Residuals of the two jump conditions across `S_R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpResiduals {
    /// `[V] + S_R' [U]`.
    pub mass: f64,
    /// `(kappa0^2 (gamma+1)/(1-btilde)) <U> - S_R'^2 - 2 kappa0 S_R`.
    pub momentum: f64,
}

/// Jumps are taken as `(r' > S_R) - (r' < S_R)`.
pub fn inner_rh_residual(
    geom: &InnerGeometry,
    theta_prime: f64,
    u_ahead: f64,
    u_behind: f64,
    v_jump: f64,
) -> JumpResiduals {
    let (s_r, slope) = geom.reflected_shock(theta_prime);
    let k = geom.kappa0;
    let mean = 0.5 * (u_ahead + u_behind);
    JumpResiduals {
        mass: v_jump + slope * (u_ahead - u_behind),
        momentum: 2.0 * k * geom.vartheta * mean - slope * slope - 2.0 * k * s_r,
    }
}

/// Jump of `V` across `S_R` implied by `V_r' = U_theta'`, integrated along
/// `r'` through a step of width `width` smoothing the reflected weak
/// solution.
pub fn implied_v_jump(geom: &InnerGeometry, theta_prime: f64, width: f64) -> f64 {
    let u = |r: f64, th: f64| {
        let (s, _) = geom.reflected_shock(th);
        1.5 + 0.5 * ((s - r) / width).tanh()
    };
    let h = 1e-3;
    let (s, _) = geom.reflected_shock(theta_prime);
    let half = 40.0 * width;
    let n = 8000;
    let dr = 2.0 * half / n as f64;
    let integrand = |r: f64| (u(r, theta_prime + h) - u(r, theta_prime - h)) / (2.0 * h);
    let mut sum = 0.5 * (integrand(s - half) + integrand(s + half));
    for i in 1..n {
        sum += integrand(s - half + i as f64 * dr);
    }
    sum * dr
}

/// Left side of the similarity equation for `U = theta'^2 f(r'/theta'^2)`.
pub fn similarity_residual(
    f: f64,
    fp: f64,
    fpp: f64,
    x: f64,
    theta_prime: f64,
    geom: &InnerGeometry,
) -> f64 {
    let t2 = theta_prime * theta_prime;
    let r_prime = x * t2;
    let k = geom.kappa0;
    (4.0 * x * x + (2.0 * k / t2) * (geom.vartheta * t2 * f - r_prime)) * fpp - (k + 2.0 * x) * fp
        + 2.0 * k * fp * fp
        + 2.0 * f
}

/// The part `4 x^2 f'' - 2 x f' + 2 f` that annihilates `sqrt(x)`.
pub fn similarity_principal(f: f64, fp: f64, fpp: f64, x: f64) -> f64 {
    4.0 * x * x * fpp - 2.0 * x * fp + 2.0 * f
}
