//! Detachment criterion for regular reflection.
//!
//! Eliminating the Mach number behind the incident shock between the two
//! jump relations gives `beta_r` in closed form; imposing that the flow
//! behind the reflected shock is parallel to the wall leaves a quadratic in
//! `tan(phi_r)` whose discriminant `F(beta_i, tan^2 phi_i)` must be
//! non-negative. In the variable `X = 1 + beta_i tan^2 phi_i` that
//! discriminant is a cubic with exactly one positive zero `x*`, and regular
//! reflection requires `tan^2 phi_i >= J = (x* - 1) / beta_i`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::shock_relations::{
    admissible_beta_bounds, incident_oblique, is_admissible, reflected_oblique, IncidentShockInput,
    ReflectedShockInput,
};
use crate::thermo::GasModel;

/// Agreement required between the Cardano and bisection roots.
pub const ROOT_AGREEMENT: f64 = 1e-10;

/// Tolerance on `delta_i + delta_r` for an accepted reflection solution.
pub const WALL_RESIDUAL: f64 = 1e-10;

/// Relative size below which a negative discriminant counts as a grazing tie.
const GRAZING_SLACK: f64 = 1e-12;

/// `(gamma + 1 - 2 btilde) beta - (gamma - 1)`, positive for `beta >= 1`.
fn compression(beta: f64, gas: &GasModel) -> f64 {
    (gas.gamma + 1.0 - 2.0 * gas.btilde) * beta - (gas.gamma - 1.0)
}

/// The two terms of `F`, returned separately so callers can judge
/// cancellation.
fn detachment_terms(beta: f64, tan_sq: f64, gas: &GasModel) -> (f64, f64) {
    let g = gas.gamma;
    let b = gas.btilde;
    let pack = 1.0 - b * beta;
    let lead = tan_sq * (1.0 + beta * beta * tan_sq).powi(2) * pack * pack;
    let tail = (beta - 1.0)
        * (1.0 + beta * tan_sq)
        * compression(beta, gas)
        * ((g - 1.0 + 2.0 * b * beta) * beta * tan_sq + (g + 1.0));
    (lead, tail)
}

/// Discriminant `F(beta_i, tan^2 phi_i)` of the reflection-angle quadratic.
pub fn detachment_function(beta_i: f64, tan_sq_phi_i: f64, gas: &GasModel) -> f64 {
    let (lead, tail) = detachment_terms(beta_i, tan_sq_phi_i, gas);
    lead - tail
}

/// `F` as a cubic in `X = 1 + beta_i tan^2 phi_i`, together with the
/// constants of its depressed form `y^3 + m y + n = 0`, `X = y - h2/(3 h3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicForm {
    pub h0: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub m: f64,
    pub n: f64,
}

impl CubicForm {
    pub fn eval(&self, x: f64) -> f64 {
        ((self.h3 * x + self.h2) * x + self.h1) * x + self.h0
    }

    /// Offset between the depressed variable and `X`.
    pub fn shift(&self) -> f64 {
        -self.h2 / (3.0 * self.h3)
    }

    /// `n^2/4 + m^3/27`; negative when all three roots are real.
    pub fn discriminant(&self) -> f64 {
        self.n * self.n / 4.0 + self.m.powi(3) / 27.0
    }
}

pub fn cubic_coefficients(beta_i: f64, gas: &GasModel) -> CubicForm {
    let g = gas.gamma;
    let b = gas.btilde;
    let beta = beta_i;
    let pack = 1.0 - b * beta;
    let pack2 = pack * pack;
    let k = compression(beta, gas);
    let h0 = -pack2 * (beta - 1.0).powi(2) / beta;
    let h3 = beta * pack2;
    let h1 = pack2 * (beta - 1.0) * (3.0 - 1.0 / beta) - 2.0 * (beta - 1.0) * pack * k;
    let h2 = -((3.0 * beta - 2.0) * pack2 + (beta - 1.0) * k * (g - 1.0 + 2.0 * b * beta));

    let a2 = h2 / h3;
    let a1 = h1 / h3;
    let a0 = h0 / h3;
    let m = a1 - a2 * a2 / 3.0;
    let n = 2.0 * a2.powi(3) / 27.0 - a2 * a1 / 3.0 + a0;
    CubicForm {
        h0,
        h1,
        h2,
        h3,
        m,
        n,
    }
}

/// Largest real root `y` of the depressed cubic `y^3 + m y + n = 0`, from
/// the radical (one real root) or trigonometric (three real roots) form.
pub fn depressed_root(cubic: &CubicForm) -> f64 {
    let (m, n) = (cubic.m, cubic.n);
    let disc = cubic.discriminant();
    if disc >= 0.0 {
        let s = disc.sqrt();
        // Take the cube root of larger magnitude; the partner follows from
        // their product -m/3.
        let u = (-0.5 * n - s.copysign(n)).cbrt();
        if u == 0.0 {
            0.0
        } else {
            u - m / (3.0 * u)
        }
    } else {
        let r = 2.0 * (-m / 3.0).sqrt();
        let arg = (1.5 * n / m * (-3.0 / m).sqrt()).clamp(-1.0, 1.0);
        r * (arg.acos() / 3.0).cos()
    }
}

/// Largest real zero of `F` in `X`, i.e. the depressed root moved back by
/// the shift.
pub fn cardano_root(cubic: &CubicForm) -> f64 {
    depressed_root(cubic) + cubic.shift()
}

/// `(y - 1) / beta_i` with `y` the depressed root left unshifted.
///
/// This is not a zero of `F`; it is kept because it reproduces the stored
/// reference grid, which was evidently tabulated this way.
pub fn unshifted_threshold(beta_i: f64, gas: &GasModel) -> Option<f64> {
    is_admissible(gas, beta_i)
        .then(|| (depressed_root(&cubic_coefficients(beta_i, gas)) - 1.0) / beta_i)
}

/// Positive zero by bisection from the bracket `[0, 2^k]`.
pub fn bisection_root(cubic: &CubicForm) -> f64 {
    let mut lo = 0.0;
    let mut hi = 1.0;
    while cubic.eval(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return f64::INFINITY;
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cubic.eval(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Unique positive zero `x*`, cross-checked between two methods.
pub fn positive_root(cubic: &CubicForm) -> Result<f64> {
    let cardano = cardano_root(cubic);
    let bisection = bisection_root(cubic);
    if (cardano - bisection).abs() <= ROOT_AGREEMENT && cardano.is_finite() {
        Ok(cardano)
    } else {
        Err(Error::RootMismatch { cardano, bisection })
    }
}

/// Outcome of the detachment criterion at one `(beta_i, gas)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub beta_i: f64,
    pub gamma: f64,
    pub btilde: f64,
    pub admissible: bool,
    pub upper_beta: f64,
    pub cubic: Option<CubicForm>,
    pub x_star: Option<f64>,
    /// Threshold on `tan^2 phi_i`.
    pub j: Option<f64>,
    pub phi_star_rad: Option<f64>,
    pub phi_star_deg: Option<f64>,
}

impl CriterionReport {
    /// Regular reflection is possible for `phi_i >= phi_star`.
    pub fn allows(&self, tan_phi_i: f64) -> bool {
        match self.j {
            Some(j) => tan_phi_i * tan_phi_i >= j,
            None => false,
        }
    }
}

pub fn criterion(beta_i: f64, gas: &GasModel) -> Result<CriterionReport> {
    let gas = gas.validate()?;
    let (_, upper_beta) = admissible_beta_bounds(&gas, None)?;
    let mut report = CriterionReport {
        beta_i,
        gamma: gas.gamma,
        btilde: gas.btilde,
        admissible: is_admissible(&gas, beta_i),
        upper_beta,
        cubic: None,
        x_star: None,
        j: None,
        phi_star_rad: None,
        phi_star_deg: None,
    };
    if !report.admissible {
        return Ok(report);
    }
    let cubic = cubic_coefficients(beta_i, &gas);
    let x_star = positive_root(&cubic)?;
    let j = ((x_star - 1.0) / beta_i).max(0.0);
    let phi_star = j.sqrt().atan();
    report.cubic = Some(cubic);
    report.x_star = Some(x_star);
    report.j = Some(j);
    report.phi_star_rad = Some(phi_star);
    report.phi_star_deg = Some(phi_star.to_degrees());
    Ok(report)
}

/// Density ratio across the reflected shock implied by equal Mach numbers
/// behind the incident and ahead of the reflected shock.
pub fn beta_r_from_angles(
    beta_i: f64,
    tan_phi_i: f64,
    tan_phi_r: f64,
    gas: &GasModel,
) -> Result<f64> {
    let g = gas.gamma;
    let ti2 = tan_phi_i * tan_phi_i;
    let tr2 = tan_phi_r * tan_phi_r;
    let num = (g + 1.0) * (1.0 + beta_i * beta_i * ti2);
    let den = (g + 1.0) * beta_i * (1.0 + tr2)
        + (g - 1.0 + 2.0 * gas.btilde * beta_i) * (beta_i * beta_i * ti2 - tr2);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DivisionByZero(format!(
            "beta_r denominator vanishes at beta_i = {beta_i}, tan(phi_r) = {tan_phi_r}"
        )));
    }
    Ok(num / den)
}

/// Tangent of the flow deflection across the reflected shock with `beta_r`
/// eliminated.
pub fn tan_delta_r(beta_i: f64, tan_phi_i: f64, tan_phi_r: f64, gas: &GasModel) -> f64 {
    let g = gas.gamma;
    let pack = 1.0 - gas.btilde * beta_i;
    let ti2 = tan_phi_i * tan_phi_i;
    let tr2 = tan_phi_r * tan_phi_r;
    let sec2 = 1.0 + tr2;
    let spread = beta_i * beta_i * ti2 - tr2;
    let num = tan_phi_r * (2.0 * pack * spread - (g + 1.0) * (beta_i - 1.0) * sec2);
    let den = beta_i * (g + 1.0) * (1.0 + beta_i * ti2) * sec2 - 2.0 * pack * spread;
    num / den
}

/// Both roots of the reflection-angle quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionBranches {
    /// The physical branch.
    pub minus: f64,
    pub plus: f64,
    pub f_value: f64,
}

pub fn tan_phi_r_branches(
    beta_i: f64,
    tan_phi_i: f64,
    gas: &GasModel,
) -> Result<ReflectionBranches> {
    let gas = gas.validate()?;
    admissible_beta_bounds(&gas, Some(beta_i))?;
    let ti2 = tan_phi_i * tan_phi_i;
    let (lead, tail) = detachment_terms(beta_i, ti2, &gas);
    let f_value = lead - tail;
    let root = if f_value >= 0.0 {
        f_value.sqrt()
    } else if -f_value <= GRAZING_SLACK * (lead.abs() + tail.abs()) {
        0.0
    } else {
        let threshold = criterion(beta_i, &gas)?.j.unwrap_or(f64::NAN);
        return Err(Error::Detachment {
            tan_sq_phi_i: ti2,
            threshold,
        });
    };
    let pack = 1.0 - gas.btilde * beta_i;
    let centre = -tan_phi_i * (1.0 + beta_i * beta_i * ti2) * pack;
    let den = (1.0 + beta_i * ti2) * compression(beta_i, &gas);
    Ok(ReflectionBranches {
        minus: (centre - root) / den,
        plus: (centre + root) / den,
        f_value,
    })
}

/// Flow state behind the reflected shock, normalized by the upstream state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionTwoState {
    pub rho_ratio: f64,
    /// Lab-frame velocity components in units of `a0`.
    pub u: f64,
    pub v: f64,
    pub p_ratio: f64,
}

/// Regular-reflection configuration at the reflection point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionSolution {
    pub beta_r: f64,
    pub tan_phi_r: f64,
    pub phi_r: f64,
    pub delta_i: f64,
    pub delta_r: f64,
    pub m2_sq: f64,
    pub state2: RegionTwoState,
}

pub fn solve_regular_reflection(
    inp: &IncidentShockInput,
    alpha: f64,
    gas: &GasModel,
) -> Result<ReflectionSolution> {
    let gas = gas.validate()?;
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::Angle(alpha));
    }
    let beta_i = inp.beta_i;
    let t_i = inp.tan_phi_i;
    let incident = incident_oblique(inp, &gas)?;
    let branches = tan_phi_r_branches(beta_i, t_i, &gas)?;
    let t_r = branches.minus;
    let beta_r = beta_r_from_angles(beta_i, t_i, t_r, &gas)?;

    let (_, upper) = admissible_beta_bounds(&gas, Some(beta_i))?;
    let strictly_inside = beta_i <= 1.0 || (beta_r > 1.0 && beta_r < upper);
    if !strictly_inside {
        return Err(Error::Inconsistent(format!(
            "reflected density ratio {beta_r} outside (1, {upper}) although F >= 0"
        )));
    }
    let reflected = reflected_oblique(
        beta_i,
        &ReflectedShockInput {
            beta_r,
            tan_phi_r: t_r,
        },
        &gas,
    )?;
    let delta_i = incident.tan_deflection.atan();
    let delta_r = tan_delta_r(beta_i, t_i, t_r, &gas).atan();
    let via_jump = reflected.tan_deflection.atan();
    let residual = (delta_i + delta_r).abs().max((delta_i + via_jump).abs());
    if residual > WALL_RESIDUAL {
        return Err(Error::Inconsistent(format!(
            "wall condition residual {residual:e} exceeds {WALL_RESIDUAL:e}"
        )));
    }

    // Pseudo-speeds at the reflection point, units of a0. The normal
    // incident shock speed equals the normal component of q0.
    let sigma = incident.q_n;
    let q0 = sigma * (1.0 + t_i * t_i).sqrt();
    let q1 = ((sigma / beta_i).powi(2) + (sigma * t_i).powi(2)).sqrt();
    let cos_r = 1.0 / (1.0 + t_r * t_r).sqrt();
    let sin_r = t_r.abs() * cos_r;
    let q2 = ((q1 * cos_r / beta_r).powi(2) + (q1 * sin_r).powi(2)).sqrt();
    let wall_speed = q0 - q2;

    Ok(ReflectionSolution {
        beta_r,
        tan_phi_r: t_r,
        phi_r: t_r.atan(),
        delta_i,
        delta_r,
        m2_sq: reflected.m_down_sq,
        state2: RegionTwoState {
            rho_ratio: beta_i * beta_r,
            u: wall_speed * alpha.cos(),
            v: wall_speed * alpha.sin(),
            p_ratio: incident.pressure_ratio * reflected.pressure_ratio,
        },
    })
}

/// Criterion grid, one row per `beta_i`.
pub fn table_generate(
    beta_grid: &[f64],
    btilde_grid: &[f64],
    gamma: f64,
) -> Result<Vec<Vec<CriterionReport>>> {
    let gases = btilde_grid
        .iter()
        .map(|&b| GasModel::new(gamma, b))
        .collect::<Result<Vec<_>>>()?;
    beta_grid
        .iter()
        .map(|&beta| gases.iter().map(|g| criterion(beta, g)).collect())
        .collect()
}

/// Default grid axes: `beta_i` in {1.2, 1.4, ..., 4.0} and the covolume
/// columns of the reference table.
pub fn default_table_axes() -> (Vec<f64>, Vec<f64>) {
    let betas = (0..15).map(|k| (12 + 2 * k) as f64 / 10.0).collect();
    let btildes = vec![0.0, 0.02, 0.04, 0.06, 0.08, 0.1, 0.3, 0.5, 0.7];
    (betas, btildes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn gas(g: f64, b: f64) -> GasModel {
        GasModel::new(g, b).unwrap()
    }

    #[test]
    fn coefficients_ideal_example() {
        let c = cubic_coefficients(1.2, &gas(1.4, 0.0));
        assert!((c.h3 - 1.2).abs() < 1e-14);
        assert!((c.h0 + 0.04 / 1.2).abs() < 1e-14);
        assert!((c.h1 + 0.558_666_666_666_667).abs() < 1e-12);
        assert!((c.h2 + 1.7984).abs() < 1e-12);
        assert_eq!(cubic_coefficients(1.0, &gas(1.4, 0.3)).h0, 0.0);
    }

    #[test]
    fn coefficient_sum_matches_f_at_zero_angle() {
        for b in [0.0, 0.1, 0.4] {
            let g = gas(1.4, b);
            for beta in [1.1, 1.3, 1.6] {
                let c = cubic_coefficients(beta, &g);
                let f0 = detachment_function(beta, 0.0, &g);
                let sum = c.h0 + c.h1 + c.h2 + c.h3;
                assert!((sum - f0).abs() <= 1e-12 * f0.abs());
                assert!(f0 < 0.0);
            }
        }
    }

    #[test]
    fn f_at_unit_density_ratio() {
        let g = gas(1.4, 0.25);
        let t2 = 0.8;
        let expected = t2 * (1.0 + t2) * (1.0 + t2) * 0.75 * 0.75;
        assert!((detachment_function(1.0, t2, &g) - expected).abs() < 1e-14);
    }

    #[test]
    fn ideal_root_example() {
        let c = cubic_coefficients(1.2, &gas(1.4, 0.0));
        let x = positive_root(&c).unwrap();
        assert!((x - 1.7705).abs() < 1e-3);
        let r = criterion(1.2, &gas(1.4, 0.0)).unwrap();
        assert!((r.j.unwrap() - 0.6421).abs() < 1e-3);
        assert!((r.phi_star_rad.unwrap().tan().powi(2) - r.j.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn unit_density_ratio_root() {
        // F~ = X^2 (1 - b)^2 (X - 1) at beta_i = 1.
        let c = cubic_coefficients(1.0, &gas(1.4, 0.2));
        assert!((cardano_root(&c) - 1.0).abs() < 1e-12);
        let r = criterion(1.0, &gas(1.4, 0.2)).unwrap();
        assert!(r.j.unwrap().abs() < 1e-12);
    }

    #[test]
    fn near_unit_density_ratio_is_continuous() {
        let g = gas(1.4, 0.1);
        let j1 = criterion(1.0 + 1e-6, &g).unwrap().j.unwrap();
        let j2 = criterion(1.0 + 2e-6, &g).unwrap().j.unwrap();
        assert!(j1 > 0.0 && j2 > j1 && j2 < 1e-4);
    }

    #[test]
    fn inadmissible_cells() {
        let r = criterion(1.8, &gas(1.4, 0.5)).unwrap();
        assert!(!r.admissible);
        assert!(r.j.is_none());
        assert!((r.upper_beta - 2.4 / 1.4).abs() < 1e-14);
    }

    #[test]
    fn branch_limits_at_unit_ratio() {
        let t = 0.7;
        let b = tan_phi_r_branches(1.0, t, &gas(1.4, 0.3)).unwrap();
        assert!((b.minus + t).abs() < 1e-14);
        assert!(b.plus.abs() < 1e-14);
    }

    #[test]
    fn discarded_branch_is_entropy_violating() {
        let g = gas(1.4, 0.15);
        for beta in [1.1, 1.7, 2.5] {
            for t in [0.3, 1.0, 2.0] {
                let br = beta_r_from_angles(beta, t, beta * t, &g).unwrap();
                assert!((br - 1.0 / beta).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn detachment_is_reported() {
        let g = gas(1.4, 0.0);
        let err = tan_phi_r_branches(1.2, 0.5, &g).unwrap_err();
        assert!(matches!(err, Error::Detachment { .. }));
        let err = solve_regular_reflection(&IncidentShockInput::from_tan(1.2, 0.5), 0.6, &g);
        assert!(matches!(err, Err(Error::Detachment { .. })));
    }

    #[test]
    fn identity_solution() {
        let s = solve_regular_reflection(
            &IncidentShockInput::new(1.0, 0.5).unwrap(),
            0.5,
            &gas(1.4, 0.2),
        )
        .unwrap();
        assert!((s.beta_r - 1.0).abs() < 1e-14);
        assert!(s.delta_r.abs() < 1e-14);
    }

    #[test]
    fn solution_at_unit_tangent() {
        for b in [0.0, 0.1] {
            let g = gas(1.4, b);
            let s =
                solve_regular_reflection(&IncidentShockInput::from_tan(1.2, 1.0), FRAC_PI_4, &g)
                    .unwrap();
            assert!((s.delta_i + s.delta_r).abs() < 1e-10);
            let (_, upper) = admissible_beta_bounds(&g, Some(1.2)).unwrap();
            assert!(s.beta_r > 1.0 && s.beta_r < upper);
            assert!((s.state2.v - s.state2.u * FRAC_PI_4.tan()).abs() < 1e-14);
            assert!(s.state2.p_ratio > 1.0);
        }
    }

    #[test]
    fn default_axes_shape() {
        let (b, t) = default_table_axes();
        assert_eq!(b.len(), 15);
        assert_eq!(b[0], 1.2);
        assert_eq!(b[14], 4.0);
        assert_eq!(t.len(), 9);
    }
}
